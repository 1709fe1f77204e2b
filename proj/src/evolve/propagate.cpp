#include "hyperq/evolve/propagate.hpp"

#include <cmath>

namespace hyperq {

SpectralField propagate_spectral(const SpectralField& s, double t,
                                 const PhysicalParams& p) {
    SpectralField out = s;
    for (size_t k = 0; k < out.weights.size(); ++k) {
        double e = energy_dispersion(out.eps((int)k), p);
        out.weights[k] *= std::polar(1.0, -e * t);
    }
    return out;
}

cplx rotated_pair(const Wavepacket& w, double t, double y,
                  const PhysicalParams& p) {
    double theta = rotation_angle(t, p);
    return conj_eval_packet(w, RotatedArg{y, theta}, p.hbar) *
           eval_packet(w, RotatedArg{y, -theta}, p.hbar);
}

}  // namespace hyperq
