#pragma once

#include "hyperq/core.hpp"

namespace hyperq {

// Verifies the Fresnel/Gaussian Fourier identity
//   e^{s i beta eps^2} = (1/sqrt(-s i 4 pi beta))
//                        * integral e^{-s i tau eps} e^{-s i tau^2/(4 beta)} dtau
// (beta = 4 hbar mu t; s = +-1 selects the branch) by regularized
// oscillatory quadrature: the integral is damped by e^{-eta tau^2} for
// eta in {1e-2, 1e-3, 1e-4} and log-extrapolated to eta = 0 rationally.
// Note the square root's branch is tied to the sign of the tau^2 exponent;
// the identity does not hold with the two signs decoupled.
//
// Returns |RHS - LHS| (the LHS has unit modulus, so this is also the
// relative residual). DomainError at beta = 0; NumericsError if the
// quadrature error estimate is not far below the residual target.
double hs_identity_residual(double eps, double beta, int sign);

}  // namespace hyperq
