#pragma once

#include <iosfwd>
#include <vector>

#include "hyperq/model/packet.hpp"
#include "hyperq/numerics/fft.hpp"

namespace hyperq {

// Uniform grid in u = ln(x / sqrt(hbar)) on one sign of x. The two half
// lines are decoupled (the dynamics never crosses x = 0), so non-even
// packets are handled as two independent half-line problems.
struct LogGrid {
    enum class Side { positive, negative };

    double u_min = -16.0;
    double u_max = 16.0;
    int n_points = 1 << 14;
    Side side = Side::positive;

    void validate() const;
    double du() const { return (u_max - u_min) / n_points; }
    double u(int j) const { return u_min + j * du(); }
    UniformGrid uniform() const { return {u_min, du(), n_points}; }
};

// Samples of phi(u), where Psi(x) = e^{-u/2} phi(u) / hbar^{1/4} on the
// grid's side. The 1/sqrt|x| weight of the eigenbasis is absorbed here, so
// the |phi|^2 measure is plain du.
struct ReducedField {
    LogGrid grid;
    std::vector<cplx> values;

    double norm() const;  // sum |phi|^2 du
};

// Per-side eigenbasis normalization; 4 pi when both sides are used (even
// sector), 2 pi per decoupled half line.
struct EigenNormConstant {
    double n_s = 4.0 * pi;
};

// Complex weights q(eps_k) on the centered frequency grid, plus the
// convention record that makes serialized files self-describing.
struct SpectralField {
    double eps_min = 0.0;
    double deps = 0.0;
    std::vector<cplx> weights;
    int forward_sign = -1;  // forward transform kernel e^{forward_sign * i eps u}
    double n_s = 4.0 * pi;

    double eps(int k) const { return eps_min + k * deps; }
    double norm() const;  // sum |q|^2 deps
};

// chi_eps(x) = e^{i eps ln|x|} / sqrt(N_s |x|); even in x by construction.
cplx chi_eval(double eps, double x, const EigenNormConstant& n = {});

// Windowed overlap integral(chi*_{eps2} chi_eps) over e^{-L} <= |x| <= e^{L},
// both signs of x: (4/N_s) sin(delta L)/delta with delta = eps - eps2 (the
// delta-sequence whose L -> infinity limit is the continuum normalization).
cplx overlap_window(double eps, double eps2, double L,
                    const EigenNormConstant& n = {});

// phi(u) = hbar^{1/4} e^{u/2} Psi_0(s sqrt(hbar) e^u). Throws WindowError
// when either boundary sample exceeds tail_tol * max|phi| (grid too small
// for the packet).
ReducedField reduce_packet(const Wavepacket& w, const LogGrid& g, double hbar,
                           double tail_tol = 1e-12);

// q(eps) = (2 pi)^{-1/2} integral e^{-i eps u} phi(u) du via FFT.
SpectralField expand(const ReducedField& f);

// Inverse transform back onto g (sizes must match).
ReducedField synthesize(const SpectralField& s, const LogGrid& g);

// Multiply by the C-infinity ramp that is exactly 0 at both grid edges and
// exactly 1 on the interior plateau; kills wrap-around seeding from
// truncated tails without introducing spectral ringing.
void apply_edge_taper(ReducedField& f, double width = 3.5,
                      double margin = 0.5);

// Self-describing columnar text serialization (header + one node per row).
void write_field(std::ostream& os, const ReducedField& f);
void write_field(std::ostream& os, const SpectralField& s);
ReducedField read_reduced_field(std::istream& is);

}  // namespace hyperq
