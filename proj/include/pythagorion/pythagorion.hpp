#pragma once

#include "pythagorion/analysis.hpp"
#include "pythagorion/contfrac.hpp"
#include "pythagorion/monomial.hpp"
#include "pythagorion/render.hpp"
#include "pythagorion/scale.hpp"
