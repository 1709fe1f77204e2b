#include "hyperq/observe/growth.hpp"

#include <cmath>

#include "hyperq/numerics/special.hpp"

namespace hyperq {

namespace {
constexpr double ln10 = 2.302585092994045684;
}

GrowthFit fit_growth(const MomentSeries& series) {
    const auto& e = series.entries;
    if (e.size() < 6)
        throw FitError("growth fit needs at least 6 samples");
    std::vector<double> ts(e.size()), lnv(e.size());
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i].n != e[0].n || e[i].route != e[0].route)
            throw FitError("growth fit requires a homogeneous (n, route) series");
        if (e[i].value.sign <= 0.0)
            throw FitError("growth fit requires strictly positive values");
        ts[i] = e[i].t;
        lnv[i] = e[i].value.log10_mag * ln10;
    }
    QuadraticFit q = polyfit_quadratic(ts, lnv);
    GrowthFit g;
    g.c0 = q.c0;
    g.c1 = q.c1;
    g.c2 = q.c2;
    double ss = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        double r = lnv[i] - (q.c0 + q.c1 * ts[i] + q.c2 * ts[i] * ts[i]);
        ss += r * r;
    }
    g.residual = std::sqrt(ss / ts.size());
    return g;
}

double kappa_scale(const GrowthFit& fit, double a, const PhysicalParams& p) {
    if (p.hbar * p.mu == 0.0)
        throw ConfigError("kappa normalization needs hbar * mu != 0");
    const double hm = p.hbar * p.mu;
    return fit.c2 * a * a / (hm * hm);
}

double lognormal_moment_printed(int n, double t, double a,
                                const PhysicalParams& p) {
    if (!(a > 0.0)) throw ConfigError("log-normal width a must be > 0");
    const double hm = p.hbar * p.mu;
    return 0.5 * std::sqrt(2.0) *
           std::exp(4.0 * p.omega * t + a * a * a * a * n * n +
                    16.0 * hm * hm * t * t / (a * a));
}

double lognormal_moment_oracle(int n, double t, double a,
                               const PhysicalParams& p) {
    if (!(a > 0.0)) throw ConfigError("log-normal width a must be > 0");
    const double hm = p.hbar * p.mu;
    return 0.5 * std::sqrt(2.0) *
           std::exp(2.0 * n * p.omega * t + 0.5 * n * n * a * a +
                    32.0 * hm * hm * t * t / (a * a));
}

}  // namespace hyperq
