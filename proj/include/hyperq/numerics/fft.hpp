#pragma once

#include <vector>

#include "hyperq/core.hpp"

namespace hyperq {

// In-place radix-2 FFT. sign = -1 gives the forward transform
// X_k = sum_j x_j exp(-2 pi i j k / N); sign = +1 the unnormalized inverse.
// Throws ConfigError unless the size is a power of two (>= 2).
void fft_pow2(std::vector<cplx>& data, int sign);

// Plain DFT of uniformly sampled data, forward sign convention, no
// normalization. Kept as the low-level entry point; everything above it
// works in centered (shifted) coordinates.
std::vector<cplx> dft_uniform(const std::vector<cplx>& data);

// Uniform grid u_j = u_min + j du, j = 0..n-1, with the matching centered
// frequency grid eps_k = (k - n/2) deps, deps = 2 pi / (n du).
struct UniformGrid {
    double u_min = 0.0;
    double du = 0.0;
    int n = 0;

    double u(int j) const { return u_min + j * du; }
    double deps() const { return 2.0 * pi / (n * du); }
    double eps(int k) const { return (k - n / 2) * deps(); }
    double u_max() const { return u_min + (n - 1) * du; }
};

// Continuum-normalized transform pair:
//   q(eps_k) = (2 pi)^{-1/2} integral e^{-i eps u} phi(u) du
//   phi(u_j) = (2 pi)^{-1/2} integral e^{+i eps u} q(eps) deps
// discretized on the grid above. Index k runs over centered frequencies.
std::vector<cplx> forward_centered(const UniformGrid& g,
                                   const std::vector<cplx>& phi);
std::vector<cplx> inverse_centered(const UniformGrid& g,
                                   const std::vector<cplx>& q);

}  // namespace hyperq
