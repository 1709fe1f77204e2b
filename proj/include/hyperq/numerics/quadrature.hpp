#pragma once

#include <functional>
#include <vector>

#include "hyperq/core.hpp"

namespace hyperq {

using Integrand = std::function<cplx(double)>;

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double err = 0.0;  // conservative absolute estimate
    int panels = 0;    // panels in the final partition
};

struct QuadratureOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_panels = 4096;
};

// Adaptive Gauss-Legendre quadrature on [a, b] with an embedded 12/24 point
// pair. The panel error is |GL24 - GL12|, which in practice overestimates
// the GL24 error by orders of magnitude; panels are split worst-first until
// the summed estimate meets the tolerance.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opt = {});

// Single 12/24 panel without subdivision, for callers that construct their
// own panel partition (oscillatory kernels with known phase windows).
QuadratureResult integrate_panel(const Integrand& f, double a, double b);

struct TailOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_extensions = 64;
    // Ratio growth factor treated as "tail is accelerating": two consecutive
    // extensions whose contribution ratio grows by more than this factor
    // trip NonDecayingTail.
    double growth_tol = 0.05;
};

struct TailResult {
    cplx value{0.0, 0.0};
    double err = 0.0;
    double reached = 0.0;  // furthest coordinate actually integrated
    int extensions = 0;
};

// Integral over [a, inf). Windows extend geometrically; the run converges
// once two consecutive window contributions fall below tolerance. Raises
// NonDecayingTail when contributions accelerate (each ratio of successive
// contributions exceeding the previous one) twice in a row, when a window
// produces a non-finite value, or when the extension budget is exhausted
// without convergence.
TailResult integrate_semi_infinite(const Integrand& f, double a,
                                   const TailOptions& opt = {});

struct LineResult {
    cplx value{0.0, 0.0};
    double err = 0.0;
    double lo = 0.0, hi = 0.0;  // window actually covered
    int extensions = 0;
};

// Integral over the whole line, expanding outward from a seed window around
// center. Each side converges independently under the same rules as
// integrate_semi_infinite.
LineResult integrate_line_expanding(const Integrand& f, double center,
                                    double seed_halfwidth = 1.0,
                                    const TailOptions& opt = {});

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre recurrence (accurate to ~1e-15, deterministic).
const std::vector<double>& gl_nodes(int order);
const std::vector<double>& gl_weights(int order);

}  // namespace hyperq
