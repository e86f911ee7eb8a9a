#pragma once

#include "sharpturn/bernstein.hpp"
#include "sharpturn/bigfloat.hpp"
#include "sharpturn/certify.hpp"
#include "sharpturn/construction.hpp"
#include "sharpturn/epsilon.hpp"
#include "sharpturn/errors.hpp"
#include "sharpturn/field.hpp"
#include "sharpturn/fit.hpp"
#include "sharpturn/lowerbound.hpp"
#include "sharpturn/polar.hpp"
#include "sharpturn/poly.hpp"
#include "sharpturn/poly_io.hpp"
#include "sharpturn/qsqrt2.hpp"
#include "sharpturn/rational.hpp"
#include "sharpturn/report.hpp"
#include "sharpturn/simplex.hpp"
#include "sharpturn/sturm.hpp"
