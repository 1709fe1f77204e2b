#include "hyperq/evolve/free_window.hpp"

#include <cmath>

#include "hyperq/numerics/quadrature.hpp"

namespace hyperq {

double free_x2_window(const Wavepacket& w, double t, double x0,
                      WindowSide side, double hbar) {
    if (!(x0 >= 0.0)) throw ConfigError("window edge x0 must be >= 0");
    // Integrate outward from the edge; mirror the left window onto [x0, inf)
    // so one semi-infinite routine serves both sides.
    double mirror = (side == WindowSide::right) ? 1.0 : -1.0;
    auto integrand = [&](double r) -> cplx {
        double x = mirror * r;
        if (x == 0.0) return {0.0, 0.0};
        cplx psi = eval_packet_real(w, x, hbar);
        cplx dpsi = packet_derivative(w, x, hbar);
        double rho = std::norm(psi);
        double cross = std::imag(std::conj(psi) * dpsi);
        double kinetic = std::norm(dpsi);
        return {x * x * rho + 2.0 * hbar * t * x * cross +
                    t * t * hbar * hbar * kinetic,
                0.0};
    };
    TailOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-18;
    TailResult r = integrate_semi_infinite(integrand, x0, opt);
    return r.value.real();
}

}  // namespace hyperq
