#pragma once

#include "hyperq/model/params.hpp"
#include "hyperq/spectral/field.hpp"

namespace hyperq {

// Exact diagonal propagator: q_t(eps) = e^{-i E(eps) t} q(eps) with
// E = 2 omega eps - 4 hbar mu eps^2. Pure phase, so |q_t| = |q| nodewise.
SpectralField propagate_spectral(const SpectralField& s, double t,
                                 const PhysicalParams& p);

// The integrand core of the rotation-form moment:
//   conj_eval(w, y, +theta) * eval(w, y, -theta),  theta = 8 hbar mu t.
// Real for even real packets at every t.
cplx rotated_pair(const Wavepacket& w, double t, double y,
                  const PhysicalParams& p);

}  // namespace hyperq
