#pragma once

#include "hyperq/model/params.hpp"

namespace hyperq {

// Exact antiderivative of integral_{-x0}^{x0} x^2 e^{c x} dx:
//   (2 x0^2 / c) sinh(c x0) - (4 x0 / c^2) cosh(c x0) + (4 / c^3) sinh(c x0)
// with the c -> 0 limit 2 x0^3 / 3. Even in c.
cplx bracket_oracle(cplx c, double x0);

// The published closed-form snapshot of the truncated second moment at the
// singularity times, evaluated verbatim (including its bracket signs, which
// do NOT all match the antiderivative above -- that comparison is a report
// row, not something this function corrects).
struct ClosedFormTerms {
    cplx xi;                 // alpha* + i (-1)^l alpha
    cplx prefactor;          // everything in front of the bracket
    cplx term_sinh_cubic;    // sqrt(2) hbar^3 / xi^3 * sinh
    cplx term_cosh_quad;     // 2 hbar^2 x0 / xi^2 * cosh
    cplx term_sinh_x0sq;     // sqrt(2) hbar x0^2 / xi * sinh
    cplx printed_bracket;    // + term1 - term2 - term3 (as published)
    cplx oracle_bracket;     // bracket_oracle(sqrt(2) xi / hbar, x0), for comparison
    cplx printed_total;      // prefactor * printed_bracket
    bool xi_degenerate = false;  // xi == 0: bracket replaced by the c->0 limit
};

ClosedFormTerms closed_form_terms(int l, cplx alpha, double x0,
                                  const PhysicalParams& p);

// printed_total, throwing DegenerateXi when xi vanishes (the terms variant
// reports the limiting value with a flag instead).
cplx closed_form_tl(int l, cplx alpha, double x0, const PhysicalParams& p);

}  // namespace hyperq
