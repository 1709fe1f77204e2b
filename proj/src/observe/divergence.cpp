#include "hyperq/observe/divergence.hpp"

#include <cmath>

namespace hyperq {

const char* verdict_name(DivergenceProfile::Verdict v) {
    switch (v) {
        case DivergenceProfile::Verdict::converged: return "converged";
        case DivergenceProfile::Verdict::diverging: return "diverging";
        case DivergenceProfile::Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void validate_ladder(const std::vector<double>& ladder) {
    if (ladder.size() < 4)
        throw ConfigError("divergence ladder needs at least 4 rungs");
    for (size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0))
            throw ConfigError("divergence ladder rungs must be > 0");
        if (i > 0 && !(ladder[i] > ladder[i - 1]))
            throw ConfigError("divergence ladder must be strictly increasing");
    }
}

}  // namespace

DivergenceProfile divergence_profile(double t, const Wavepacket& w,
                                     const PhysicalParams& p,
                                     const std::vector<double>& ladder,
                                     const DivergenceThresholds& thr) {
    validate_ladder(ladder);
    DivergenceProfile prof;
    prof.t = t;
    prof.ladder.reserve(ladder.size());
    for (double x0 : ladder) {
        MomentValue m =
            moment_truncated(2, t, x0, w, p, PropagationRoute::rotation_form);
        prof.ladder.push_back({x0, m.value, m.err});
    }

    // All comparisons run on log10 magnitudes so that rungs past double
    // range still classify correctly.
    const size_t k = prof.ladder.size();
    for (size_t i = 0; i < k; ++i) {
        if (prof.ladder[i].value.zero() || prof.ladder[i].value.sign < 0.0)
            return prof;  // inconclusive: not a growth profile at all
    }
    std::vector<double> lr(k - 1);  // log10 of inter-rung ratios
    for (size_t i = 0; i + 1 < k; ++i)
        lr[i] = ScaledReal::log10_ratio(prof.ladder[i + 1].value,
                                        prof.ladder[i].value);
    prof.log10_growth_ratio = lr.back();
    prof.growth_ratio = std::pow(10.0, lr.back());

    const double last_rel_change = std::abs(1.0 - std::pow(10.0, -lr.back()));
    if (last_rel_change < thr.converged_rel) {
        prof.verdict = DivergenceProfile::Verdict::converged;
        return prof;
    }
    bool monotone = true;
    const double slack = std::log10(1.0 - thr.monotone_tol);
    for (size_t i = 0; i + 1 < lr.size(); ++i)
        if (lr[i + 1] < lr[i] + slack) monotone = false;
    if (monotone && lr.back() >= std::log10(thr.ratio_floor))
        prof.verdict = DivergenceProfile::Verdict::diverging;
    return prof;
}

ScanResult scan_singularities(const std::vector<double>& t_grid,
                              const Wavepacket& w, const PhysicalParams& p,
                              const std::vector<double>& ladder,
                              const DivergenceThresholds& thr) {
    validate_ladder(ladder);
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw ConfigError("scan time grid must be strictly increasing");

    ScanResult res;
    res.profiles.reserve(t_grid.size());
    for (double t : t_grid)
        res.profiles.push_back(divergence_profile(t, w, p, ladder, thr));

    const auto flagged = [&](size_t i) {
        return res.profiles[i].verdict == DivergenceProfile::Verdict::diverging;
    };
    size_t i = 0;
    while (i < res.profiles.size()) {
        if (!flagged(i)) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < res.profiles.size() && flagged(j + 1)) ++j;
        ScanCluster c;
        c.first_index = static_cast<int>(i);
        c.last_index = static_cast<int>(j);
        c.t_first = t_grid[i];
        c.t_last = t_grid[j];
        // Onset bracket: the flag switched on somewhere between the last
        // quiet point and the first flagged one; the midpoint is the scan's
        // estimate of the singular time.
        c.onset_lo = (i > 0) ? t_grid[i - 1] : t_grid[i];
        c.onset_hi = t_grid[i];
        c.midpoint = 0.5 * (c.onset_lo + c.onset_hi);
        res.clusters.push_back(c);
        i = j + 1;
    }
    return res;
}

}  // namespace hyperq
