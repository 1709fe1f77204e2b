#pragma once

#include <string>
#include <vector>

#include "hyperq/evolve/pde.hpp"
#include "hyperq/model/packet.hpp"
#include "hyperq/model/params.hpp"

namespace hyperq {

enum class PropagationRoute { rotation_form, spectral, pde_oracle, free_window };

const char* route_name(PropagationRoute r);
PropagationRoute route_from_name(const std::string& name);

// One <x^n(t)> sample. Values near a singularity overflow double, so the
// canonical storage is the scaled form; `value.value()` materializes when
// |log10| < 300 (and is +-inf past that, by design).
struct MomentValue {
    double t = 0.0;
    int n = 2;
    PropagationRoute route = PropagationRoute::rotation_form;
    ScaledReal value;
    double err = 0.0;  // absolute error estimate (may be inf if value overflows)
    std::vector<std::string> flags;

    std::string flags_joined() const;
};

struct MomentSeries {
    std::vector<MomentValue> entries;
};

// Shared configuration of the grid-based (spectral / finite-difference)
// moment pipelines.
struct PipelineConfig {
    LogGrid spectral_grid;     // default [-16,16], 2^14 nodes
    PdeStepperConfig pde;      // default dt 2e-6 on [-16,16], 2^15 nodes
    // Containment gate for reduce_packet inside the pipelines. The coherent
    // family's reduced field has an intrinsic e^{u/2} left tail that only
    // reaches 1e-12 of peak near u = -56, far beyond practical grids, so
    // the pipeline default is looser than reduce_packet's own 1e-12.
    double tail_tol = 2e-3;
    double taper_width = 3.5;
    double taper_margin = 0.5;
    // The weighted sum stops this far below u_max, keeping the e^{nu}
    // amplification away from whatever the periodic edge still carries.
    double cut_margin = 6.0;

    PipelineConfig() {
        pde.grid.n_points = 1 << 15;
        pde.dt = 2e-6;
    }
};

// <x^n(t)> over the whole line by rotation-form quadrature:
//   2 e^{2 n omega t} integral_0^inf y^n rotated_pair(w, t, y) dy.
// Throws NonDecayingTail when the integrand stops decaying (divergent
// moment); use divergence_profile to characterize those t.
MomentValue moment_rotation(int n, double t, const Wavepacket& w,
                            const PhysicalParams& p);

// Saddle-region share with |x| <= x0, always finite.
//   rotation route:       y integrated up to y0 = x0 e^{-2 omega t}
//                         (truncation of the dilated coordinate -- canonical)
//   spectral/pde routes:  sum of e^{nu} |phi(u,t)|^2 du up to
//                         u = min(ln(x0/sqrt(hbar)), u_max - cut_margin)
// The two truncation geometries are NOT identical; their difference at
// modest x0 is a genuine (reported) systematic, vanishing as x0 grows.
MomentValue moment_truncated(int n, double t, double x0, const Wavepacket& w,
                             const PhysicalParams& p, PropagationRoute route,
                             const PipelineConfig& cfg = {});

// Finite-difference moments on an increasing time grid sharing one stepper
// (the per-time cost of re-evolving from 0 would be quadratic).
MomentSeries moment_series_pde(int n, const std::vector<double>& ts, double x0,
                               const Wavepacket& w, const PhysicalParams& p,
                               const PipelineConfig& cfg = {});

// I_s + I_f^- + I_f^+ : truncated saddle share plus both free windows.
struct TotalX2 {
    double value = 0.0;
    double err = 0.0;
    double saddle = 0.0, free_left = 0.0, free_right = 0.0;
};
TotalX2 total_x2(double t, double x0, const Wavepacket& w,
                 const PhysicalParams& p, const PipelineConfig& cfg = {});

}  // namespace hyperq
