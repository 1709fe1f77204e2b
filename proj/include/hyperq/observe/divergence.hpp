#pragma once

#include "hyperq/observe/moments.hpp"

namespace hyperq {

// Verdict thresholds. The published prose rule ("ratios monotonically
// increasing and last ratio > 10") can never fire on this problem: a
// truncated moment that diverges like x0^3 has contribution ratios pinned
// at exactly 8 on a doubling ladder, neither increasing nor above 10. The
// operative rule is therefore: ratios non-decreasing within monotone_tol
// AND last ratio >= ratio_floor. Both knobs are surfaced on the CLI.
struct DivergenceThresholds {
    double converged_rel = 1e-6;  // last-rung relative change below this
    double ratio_floor = 4.0;
    double monotone_tol = 0.05;
};

struct DivergenceRung {
    double x0 = 0.0;
    ScaledReal value;
    double err = 0.0;
};

struct DivergenceProfile {
    enum class Verdict { converged, diverging, inconclusive };

    double t = 0.0;
    std::vector<DivergenceRung> ladder;
    Verdict verdict = Verdict::inconclusive;
    double growth_ratio = 0.0;        // last inter-rung ratio (may be inf)
    double log10_growth_ratio = 0.0;  // always finite
};

const char* verdict_name(DivergenceProfile::Verdict v);

// Truncated-moment ladder at one t (rotation route: finite by construction).
DivergenceProfile divergence_profile(double t, const Wavepacket& w,
                                     const PhysicalParams& p,
                                     const std::vector<double>& ladder,
                                     const DivergenceThresholds& thr = {});

// A maximal run of consecutive diverging grid points. The onset bracket is
// (last non-flagged t before the run, first flagged t); its midpoint is the
// scan's singularity-time estimate.
struct ScanCluster {
    double t_first = 0.0, t_last = 0.0;
    double onset_lo = 0.0, onset_hi = 0.0;
    double midpoint = 0.0;
    int first_index = 0, last_index = 0;
};

struct ScanResult {
    std::vector<DivergenceProfile> profiles;
    std::vector<ScanCluster> clusters;
};

ScanResult scan_singularities(const std::vector<double>& t_grid,
                              const Wavepacket& w, const PhysicalParams& p,
                              const std::vector<double>& ladder,
                              const DivergenceThresholds& thr = {});

}  // namespace hyperq
