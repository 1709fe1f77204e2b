#pragma once

#include <vector>

#include "hyperq/core.hpp"

namespace hyperq {

// Standard normal CDF via the complementary error function; absolute error
// below 1e-14 across the real line.
double normal_cdf(double z);

// C-infinity bump ramp: 0 for s <= 0, 1 for s >= 1, smooth in between.
// Used to taper field edges without introducing derivative jumps.
double smoothstep_cinf(double s);

struct QuadraticFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // y = c0 + c1 x + c2 x^2
};

// Least-squares quadratic through (x_i, y_i); x is centered internally so
// the normal equations stay well-conditioned. Throws FitError for fewer
// than 3 points or a degenerate abscissa set.
QuadraticFit polyfit_quadratic(const std::vector<double>& x,
                               const std::vector<double>& y);

struct LineFit {
    double intercept = 0.0, slope = 0.0;
};

// Least-squares straight line; FitError for fewer than 2 points or zero
// abscissa variance.
LineFit polyfit_line(const std::vector<double>& x,
                     const std::vector<double>& y);

// Rational (Bulirsch-Stoer) extrapolation of y(h) to h = 0 through the
// sample points, most useful for sequences with mixed power tails where a
// plain polynomial fit stalls. Points must have distinct h > 0.
double extrapolate_to_zero(const std::vector<double>& h,
                           const std::vector<double>& y);
cplx extrapolate_to_zero(const std::vector<double>& h,
                         const std::vector<cplx>& y);

}  // namespace hyperq
