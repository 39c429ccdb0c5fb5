#pragma once

// Exact scalar tower: rationals, truncated Laurent series, densities and
// two-variable kernels with poles on the diagonal.
#include "opers/bikernel.hpp"
#include "opers/errors.hpp"
#include "opers/rational.hpp"
#include "opers/series.hpp"
