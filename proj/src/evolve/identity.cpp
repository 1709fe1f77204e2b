#include "hyperq/evolve/identity.hpp"

#include <cmath>
#include <vector>

#include "hyperq/numerics/quadrature.hpp"
#include "hyperq/numerics/special.hpp"

namespace hyperq {

namespace {

// Damped oscillatory integral
//   J(eta) = integral_{-inf}^{inf} e^{-eta tau^2} e^{-s i (tau eps + tau^2/(4 beta))} dtau
// folded onto [0, inf):  2 e^{-eta tau^2} cos(eps tau) e^{-s i tau^2/(4 beta)}.
// Panels are sized so each spans at most ~pi of phase, where a 24-point
// Gauss rule is exact to machine precision.
cplx damped_kernel_integral(double eps, double beta, int sign, double eta,
                            double* err_out) {
    const double quad_rate = 1.0 / (4.0 * std::abs(beta));
    auto f = [=](double tau) -> cplx {
        double envelope = 2.0 * std::exp(-eta * tau * tau) *
                          std::cos(eps * tau);
        double phase = -sign * (tau * tau / (4.0 * beta));
        return envelope * std::polar(1.0, phase);
    };
    const double t_max = std::sqrt(42.0 / eta);  // envelope ~ 1e-18 beyond
    cplx total{0.0, 0.0};
    double err = 0.0;
    double tau = 0.0;
    while (tau < t_max) {
        double rate = std::abs(eps) + 2.0 * tau * quad_rate;  // |d phase/d tau|
        double width = std::min(1.0, pi / std::max(rate, 1e-12));
        double hi = std::min(tau + width, t_max);
        QuadratureResult part = integrate_panel(f, tau, hi);
        total += part.value;
        err += part.err;
        tau = hi;
    }
    *err_out = err;
    return total;
}

}  // namespace

double hs_identity_residual(double eps, double beta, int sign) {
    if (beta == 0.0)
        throw DomainError("identity kernel is undefined at beta = 0");
    if (sign != 1 && sign != -1)
        throw ConfigError("sign must be +1 or -1");
    // Regulator ladder, extrapolated to eta = 0 in log space. The ladder is
    // fixed so results are bit-for-bit reproducible.
    const std::vector<double> etas = {1e-2, 1e-3, 1e-4};
    std::vector<cplx> log_j(etas.size());
    for (size_t i = 0; i < etas.size(); ++i) {
        double err = 0.0;
        cplx j = damped_kernel_integral(eps, beta, sign, etas[i], &err);
        if (!(std::abs(j) > 0.0) || err > 1e-6 * std::abs(j))
            throw NumericsError("oscillatory quadrature failed to converge");
        log_j[i] = std::log(j);
    }
    cplx j0 = std::exp(extrapolate_to_zero(etas, log_j));
    // Branch-paired square root: the radical sign follows the tau^2
    // exponent's sign, i.e. sqrt(-s i 4 pi beta).
    cplx denom = std::sqrt(cplx{0.0, -sign * 4.0 * pi * beta});
    cplx rhs = j0 / denom;
    cplx lhs = std::polar(1.0, sign * beta * eps * eps);
    return std::abs(rhs - lhs);
}

}  // namespace hyperq
