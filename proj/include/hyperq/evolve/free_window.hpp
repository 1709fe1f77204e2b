#pragma once

#include "hyperq/model/packet.hpp"

namespace hyperq {

enum class WindowSide { left, right };

// Contribution of the free outer region |x| > x0 to <x^2(t)> under free
// evolution, computed as the windowed expectation of the Heisenberg
// operator (x + t p)^2 on the *initial* packet:
//   integral over the window of
//     x^2 |Psi|^2 + 2 hbar t x Im(conj(Psi) Psi') + t^2 hbar^2 |Psi'|^2.
// Grows as t^2 once the t^2 term dominates.
double free_x2_window(const Wavepacket& w, double t, double x0,
                      WindowSide side, double hbar);

}  // namespace hyperq
