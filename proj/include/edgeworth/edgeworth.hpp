#pragma once

#include "edgeworth/errors.hpp"
#include "edgeworth/combinatorics.hpp"
#include "edgeworth/poly.hpp"
#include "edgeworth/series.hpp"
#include "edgeworth/cumulants.hpp"
#include "edgeworth/quadrature.hpp"
#include "edgeworth/expansion.hpp"
#include "edgeworth/charfun.hpp"
#include "edgeworth/fft.hpp"
#include "edgeworth/grid.hpp"
#include "edgeworth/gridoracle.hpp"
#include "edgeworth/fit.hpp"
#include "edgeworth/fractional.hpp"
#include "edgeworth/rates.hpp"
#include "edgeworth/smoothing.hpp"
#include "edgeworth/verify.hpp"
