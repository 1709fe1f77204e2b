#include "hyperq/numerics/fft.hpp"

#include <cmath>

namespace hyperq {

namespace {

bool is_pow2(size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

void fft_pow2(std::vector<cplx>& data, int sign) {
    const size_t n = data.size();
    if (!is_pow2(n))
        throw ConfigError("fft size must be a power of two (>= 2), got " +
                          std::to_string(n));
    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * pi / (double)len;
        cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = data[i + k];
                cplx v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cplx> dft_uniform(const std::vector<cplx>& data) {
    std::vector<cplx> out = data;
    fft_pow2(out, -1);
    return out;
}

std::vector<cplx> forward_centered(const UniformGrid& g,
                                   const std::vector<cplx>& phi) {
    if ((int)phi.size() != g.n)
        throw ConfigError("field length does not match grid");
    // q_k = du/sqrt(2 pi) e^{-i eps_k u_min} sum_j phi_j (-1)^j e^{-2 pi i jk/N}
    // The (-1)^j factor shifts the frequency origin to the middle bin.
    std::vector<cplx> work(phi);
    for (int j = 1; j < g.n; j += 2) work[j] = -work[j];
    fft_pow2(work, -1);
    const double scale = g.du / std::sqrt(2.0 * pi);
    std::vector<cplx> q(g.n);
    for (int k = 0; k < g.n; ++k) {
        double e = g.eps(k);
        q[k] = scale * std::polar(1.0, -e * g.u_min) * work[k];
    }
    return q;
}

std::vector<cplx> inverse_centered(const UniformGrid& g,
                                   const std::vector<cplx>& q) {
    if ((int)q.size() != g.n)
        throw ConfigError("spectrum length does not match grid");
    std::vector<cplx> work(g.n);
    for (int k = 0; k < g.n; ++k)
        work[k] = std::polar(1.0, g.eps(k) * g.u_min) * q[k];
    fft_pow2(work, +1);
    const double scale = g.deps() / std::sqrt(2.0 * pi);
    std::vector<cplx> phi(g.n);
    for (int j = 0; j < g.n; ++j) {
        double s = (j % 2 == 0) ? 1.0 : -1.0;
        phi[j] = scale * s * work[j];
    }
    return phi;
}

}  // namespace hyperq
