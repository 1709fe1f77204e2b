#pragma once

#include "hyperq/core.hpp"

namespace hyperq {

// Evaluation argument y e^{i theta} with the angle kept unwrapped; complex
// logarithms below use ln(y e^{i theta}) := ln y + i theta.
struct RotatedArg {
    double y = 1.0;      // magnitude, > 0
    double theta = 0.0;  // radians, NOT reduced mod 2 pi
};

// The two packet families under study. Both are evaluable at
// complex-rotated arguments (entire in theta).
//
//   coherent(alpha):  (hbar pi)^{-1/4}
//                     exp(-|alpha|^2/2hbar - (z^2 - 2 sqrt2 z alpha + alpha^2)/2hbar)
//   lognormal(a):     N^{-1/2} exp(-ln^2|z| / 4a^2 - ln|z| / 2),  N = 4 a sqrt(pi)
//
// The log-normal form is used exactly as written above; note it carries no
// hbar anywhere, so its norm is hbar-independent (and equals sqrt(2)/2, not
// 1 -- that normalization choice is preserved, not "fixed").
struct Wavepacket {
    enum class Family { coherent, lognormal };

    Family family = Family::coherent;
    cplx alpha{0.0, 0.0};  // coherent amplitude, units sqrt(action)
    double a = 1.0;        // log-normal width (dimensionless)

    static Wavepacket coherent(cplx alpha) {
        Wavepacket w;
        w.family = Family::coherent;
        w.alpha = alpha;
        return w;
    }
    static Wavepacket lognormal(double a) {
        if (!(a > 0.0)) throw ConfigError("log-normal width a must be > 0");
        Wavepacket w;
        w.family = Family::lognormal;
        w.a = a;
        return w;
    }
};

// Psi_0 evaluated at z = y e^{i theta}.
cplx eval_packet(const Wavepacket& w, const RotatedArg& z, double hbar);

// Psi_0 at real x of either sign, evaluated without a polar detour so that
// even packets give bitwise-equal values at +x and -x.
cplx eval_packet_real(const Wavepacket& w, double x, double hbar);

// Analytic continuation of x -> Psi_0^*(x): conj(eval_packet(w, conj z)).
// Reduces to plain conjugation at theta = 0.
cplx conj_eval_packet(const Wavepacket& w, const RotatedArg& z, double hbar);

// dPsi_0/dx at real x != 0 (entire for the coherent family; the log-normal
// family has the |x| kink at 0, which never lies inside any window used
// here).
cplx packet_derivative(const Wavepacket& w, double x, double hbar);

// integral |Psi_0|^2 dx over the full line by adaptive quadrature, error
// estimate below 1e-10 or NumericsError.
double packet_norm(const Wavepacket& w, double hbar);

}  // namespace hyperq
