#include "hyperq/evolve/pde.hpp"

#include <cmath>

#if defined(__SSE2__) || defined(_M_X64)
#define HYPERQ_HAVE_SSE_CSR 1
#include <xmmintrin.h>
#endif

namespace hyperq {

namespace {

// Scoped flush-to-zero / denormals-are-zero.  The Thomas recurrences decay
// geometrically into the dead regions of the grid, so the work vectors (and
// the cached rank-one correction column) carry long denormal bands that are
// re-read on every step; hardware assists for those make each step ~10x
// slower than the same loop on normal numbers.  Nothing this solver reports
// depends on magnitudes within 250 decades of the field peak, so treating
// denormals as zero inside the stepping loop is free accuracy-wise (measured
// norm drift is bit-identical).  The mode is restored on scope exit so the
// rest of the library keeps full IEEE semantics.
struct FlushDenormalsScope {
#if HYPERQ_HAVE_SSE_CSR
    unsigned saved_csr;
    FlushDenormalsScope() : saved_csr(_mm_getcsr()) {
        _mm_setcsr(saved_csr | 0x8040u);  // FTZ (bit 15) | DAZ (bit 6)
    }
    ~FlushDenormalsScope() { _mm_setcsr(saved_csr); }
#endif
    FlushDenormalsScope(const FlushDenormalsScope&) = delete;
    FlushDenormalsScope& operator=(const FlushDenormalsScope&) = delete;
};

}  // namespace

PdeStepper::PdeStepper(const ReducedField& f0, const PhysicalParams& p,
                       const PdeStepperConfig& cfg)
    : field_(f0), params_(p), cfg_(cfg) {
    p.validate();
    cfg.grid.validate();
    if (!(cfg.dt > 0.0)) throw ConfigError("stepper needs dt > 0");
    if (cfg.grid.u_min != f0.grid.u_min || cfg.grid.u_max != f0.grid.u_max ||
        cfg.grid.n_points != f0.grid.n_points)
        throw ConfigError("stepper grid does not match the field grid");
    const double du = cfg.grid.du();
    // phi_t = L phi with L = -2 omega d_u - 4 i hbar mu d_u^2 (centered).
    const double adv = p.omega / du;
    const cplx dif{0.0, 4.0 * p.hbar * p.mu / (du * du)};
    l_sub_ = cplx{adv, 0.0} - dif;
    l_sup_ = cplx{-adv, 0.0} - dif;
    l_diag_ = 2.0 * dif;
    norm0_ = field_.norm();
    if (!(norm0_ > 0.0)) throw ConfigError("cannot evolve a zero field");
    const size_t n = field_.values.size();
    mult_.resize(n);
    inv_den_.resize(n);
    z_.resize(n);
    rhs_.resize(n);
    y_.resize(n);
}

void PdeStepper::prepare(double h) {
    const size_t n = field_.values.size();
    a_sub_ = -0.5 * h * l_sub_;
    a_sup_ = -0.5 * h * l_sup_;
    a_diag_ = cplx{1.0, 0.0} - 0.5 * h * l_diag_;
    // Sherman-Morrison splitting of the periodic corners: A = T + u v^T with
    // u = (gamma, 0, ..., a_sup), v = (1, 0, ..., a_sub/gamma).
    gamma_ = -a_diag_;
    v_last_ = a_sub_ / gamma_;
    // Thomas factorization of T (constant band, modified end diagonals).
    auto diag_at = [&](size_t i) -> cplx {
        if (i == 0) return a_diag_ - gamma_;
        if (i == n - 1) return a_diag_ - a_sub_ * a_sup_ / gamma_;
        return a_diag_;
    };
    cplx den = diag_at(0);
    inv_den_[0] = 1.0 / den;
    mult_[0] = 0.0;
    for (size_t i = 1; i < n; ++i) {
        mult_[i] = a_sub_ * inv_den_[i - 1];
        den = diag_at(i) - mult_[i] * a_sup_;
        inv_den_[i] = 1.0 / den;
    }
    // Solve T z = u once; every step reuses it.
    z_[0] = gamma_;
    for (size_t i = 1; i < n; ++i)
        z_[i] = ((i == n - 1) ? a_sup_ : cplx{0.0, 0.0}) - mult_[i] * z_[i - 1];
    z_[n - 1] *= inv_den_[n - 1];
    for (size_t i = n - 1; i-- > 0;)
        z_[i] = (z_[i] - a_sup_ * z_[i + 1]) * inv_den_[i];
    denom_sm_ = cplx{1.0, 0.0} + z_[0] + v_last_ * z_[n - 1];
    prepared_h_ = h;
}

void PdeStepper::step(double h) {
    if (h != prepared_h_) prepare(h);
    const size_t n = field_.values.size();
    const std::vector<cplx>& phi = field_.values;
    const cplx b_sub = 0.5 * h * l_sub_;
    const cplx b_sup = 0.5 * h * l_sup_;
    const cplx b_diag = cplx{1.0, 0.0} + 0.5 * h * l_diag_;
    for (size_t j = 0; j < n; ++j) {
        const cplx& left = phi[(j == 0) ? n - 1 : j - 1];
        const cplx& right = phi[(j == n - 1) ? 0 : j + 1];
        rhs_[j] = b_sub * left + b_diag * phi[j] + b_sup * right;
    }
    // Thomas on T, then the rank-one correction for the periodic corners.
    y_[0] = rhs_[0];
    for (size_t i = 1; i < n; ++i) y_[i] = rhs_[i] - mult_[i] * y_[i - 1];
    y_[n - 1] *= inv_den_[n - 1];
    for (size_t i = n - 1; i-- > 0;)
        y_[i] = (y_[i] - a_sup_ * y_[i + 1]) * inv_den_[i];
    const cplx fac = (y_[0] + v_last_ * y_[n - 1]) / denom_sm_;
    double peak = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const cplx v = y_[i] - fac * z_[i];
        field_.values[i] = v;
        peak = std::max(peak,
                        std::abs(v.real()) + std::abs(v.imag()));
    }
    // Underflowed tails otherwise fill whole grid regions with denormals,
    // and denormal arithmetic is microcoded (~25x step slowdown measured).
    // 250 decades below the field peak is far outside any quantity this
    // solver is trusted for.
    const double floor = peak * 1e-250;
    for (size_t i = 0; i < n; ++i) {
        cplx& v = field_.values[i];
        if (std::abs(v.real()) + std::abs(v.imag()) < floor) v = 0.0;
    }
    ++steps_;
}

void PdeStepper::advance_to(double t) {
    if (t < time_ - 1e-15 * std::max(1.0, std::abs(time_)))
        throw ConfigError("stepper cannot run backwards in time");
    const double span = t - time_;
    if (span <= 0.0) return;
    long n_full = (long)std::floor(span / cfg_.dt + 1e-9);
    double rem = span - n_full * cfg_.dt;
    if (rem < 0.0) {
        --n_full;
        rem = span - n_full * cfg_.dt;
    }
    {
        [[maybe_unused]] FlushDenormalsScope flush_denormals;
        for (long k = 0; k < n_full; ++k) step(cfg_.dt);
        if (rem > 1e-12 * cfg_.dt) step(rem);
    }
    time_ = t;
    if (norm_drift() > 1e-6)
        throw StabilityError("discrete norm drifted by more than 1e-6");
}

double PdeStepper::norm_drift() const {
    return std::abs(field_.norm() - norm0_) / norm0_;
}

ReducedField pde_evolve(const ReducedField& f0, double t,
                        const PhysicalParams& p, const PdeStepperConfig& cfg) {
    PdeStepper stepper(f0, p, cfg);
    stepper.advance_to(t);
    return stepper.field();
}

}  // namespace hyperq
