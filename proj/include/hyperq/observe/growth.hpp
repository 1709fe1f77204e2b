#pragma once

#include "hyperq/observe/moments.hpp"

namespace hyperq {

// ln v(t) = c0 + c1 t + c2 t^2 least-squares decomposition of a moment
// series: c1 captures the classical dilation rate, c2 the quadratic-in-time
// quantum term.
struct GrowthFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double residual = 0.0;  // rms of ln-residuals
};

// Requires >= 6 entries, all of one (n, route), all strictly positive.
GrowthFit fit_growth(const MomentSeries& series);

// Dimensionless quadratic coefficient c2 a^2/(hbar mu)^2 -- the report's
// kappa-normalized growth scale (32 for the oracle law, 16 as published).
double kappa_scale(const GrowthFit& fit, double a, const PhysicalParams& p);

// n-th moment of the log-normal packet.
// As published: (sqrt2/2) exp(4 omega t + a^4 n^2 + 16 hbar^2 mu^2 t^2/a^2).
double lognormal_moment_printed(int n, double t, double a,
                                const PhysicalParams& p);
// Closed Gaussian-integral evaluation of the rotation-form moment:
// (sqrt2/2) exp(2 n omega t + n^2 a^2/2 + 32 hbar^2 mu^2 t^2/a^2).
double lognormal_moment_oracle(int n, double t, double a,
                               const PhysicalParams& p);

}  // namespace hyperq
