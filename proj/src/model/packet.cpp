#include "hyperq/model/packet.hpp"

#include <cmath>

#include "hyperq/numerics/quadrature.hpp"

namespace hyperq {

namespace {

cplx eval_coherent(cplx alpha, cplx z, double hbar) {
    double norm_a2 = std::norm(alpha);
    cplx expo = -norm_a2 / (2.0 * hbar) -
                (z * z - 2.0 * std::sqrt(2.0) * z * alpha + alpha * alpha) /
                    (2.0 * hbar);
    return std::pow(hbar * pi, -0.25) * std::exp(expo);
}

// ln z with the unwrapped-angle convention ln(y e^{i theta}) = ln y + i theta.
cplx eval_lognormal(double a, double y, double theta) {
    cplx lnz{std::log(y), theta};
    double n = 4.0 * a * std::sqrt(pi);
    cplx expo = -lnz * lnz / (4.0 * a * a) - lnz / 2.0;
    return std::exp(expo) / std::sqrt(n);
}

}  // namespace

cplx eval_packet(const Wavepacket& w, const RotatedArg& z, double hbar) {
    if (!(z.y > 0.0)) throw DomainError("RotatedArg magnitude must be > 0");
    if (w.family == Wavepacket::Family::coherent)
        return eval_coherent(w.alpha, z.y * std::polar(1.0, z.theta), hbar);
    return eval_lognormal(w.a, z.y, z.theta);
}

cplx conj_eval_packet(const Wavepacket& w, const RotatedArg& z, double hbar) {
    return std::conj(eval_packet(w, RotatedArg{z.y, -z.theta}, hbar));
}

cplx eval_packet_real(const Wavepacket& w, double x, double hbar) {
    if (x == 0.0 && w.family == Wavepacket::Family::lognormal)
        throw DomainError("log-normal packet undefined at x = 0");
    if (w.family == Wavepacket::Family::coherent)
        return eval_coherent(w.alpha, cplx{x, 0.0}, hbar);
    return eval_lognormal(w.a, std::abs(x), 0.0);
}

cplx packet_derivative(const Wavepacket& w, double x, double hbar) {
    if (w.family == Wavepacket::Family::coherent) {
        cplx psi = eval_coherent(w.alpha, cplx{x, 0.0}, hbar);
        return psi * (std::sqrt(2.0) * w.alpha - x) / hbar;
    }
    if (x == 0.0) throw DomainError("log-normal derivative undefined at x = 0");
    double y = std::abs(x);
    cplx psi = eval_lognormal(w.a, y, 0.0);
    // d/dx of exp(-ln^2|x|/4a^2 - ln|x|/2); the |x| makes this odd-symmetric
    // in the prefactor through 1/x.
    return psi * (-std::log(y) / (2.0 * w.a * w.a) - 0.5) / x;
}

double packet_norm(const Wavepacket& w, double hbar) {
    auto density = [&](double x) -> cplx {
        if (w.family == Wavepacket::Family::lognormal && x == 0.0)
            return {0.0, 0.0};  // integrable log-singularity point
        return {std::norm(eval_packet_real(w, x, hbar)), 0.0};
    };
    // Center the expanding window where the packet actually lives.
    double center = (w.family == Wavepacket::Family::coherent)
                        ? std::sqrt(2.0) * w.alpha.real()
                        : 0.0;
    TailOptions opt;
    opt.rel_tol = 1e-12;
    double seed = (w.family == Wavepacket::Family::coherent)
                      ? std::max(1.0, 2.0 * std::sqrt(hbar))
                      : std::exp(2.0 * w.a);  // covers the log-normal bulk
    LineResult r = integrate_line_expanding(density, center, seed, opt);
    if (!(r.err < 1e-10))
        throw NumericsError("packet norm quadrature error above 1e-10");
    return r.value.real();
}

}  // namespace hyperq
