#pragma once

#include <vector>

#include "hyperq/model/params.hpp"
#include "hyperq/spectral/field.hpp"

namespace hyperq {

struct PdeStepperConfig {
    double dt = 2e-6;
    LogGrid grid;  // must match the field being evolved
    // scheme is fixed: Crank-Nicolson on second-order centered differences
};

// Finite-difference oracle for i phi_t = (2 omega D - 4 hbar mu D^2) phi,
// D = -i d/du, on a periodic u-window. The discrete operator is
// anti-Hermitian, so the Cayley (Crank-Nicolson) step is exactly unitary;
// any norm drift is solver roundoff and is monitored.
class PdeStepper {
  public:
    PdeStepper(const ReducedField& f0, const PhysicalParams& p,
               const PdeStepperConfig& cfg);

    // Advance to absolute time t (>= current time), full dt steps plus one
    // trailing partial step to land exactly on t.
    void advance_to(double t);

    const ReducedField& field() const { return field_; }
    double time() const { return time_; }
    long steps() const { return steps_; }
    double norm_drift() const;  // relative drift vs the initial norm

  private:
    void prepare(double h);   // factor (I - h/2 L) for the cyclic solve
    void step(double h);

    ReducedField field_;
    PhysicalParams params_;
    PdeStepperConfig cfg_;
    double time_ = 0.0;
    long steps_ = 0;
    double norm0_ = 0.0;

    // operator diagonals
    cplx l_sub_, l_diag_, l_sup_;
    // factored implicit matrix for the current step size
    double prepared_h_ = -1.0;
    std::vector<cplx> mult_, inv_den_, z_;
    cplx a_sub_, a_diag_, a_sup_, gamma_, v_last_, denom_sm_;
    std::vector<cplx> rhs_, y_;
};

// One-shot convenience wrapper: evolve f0 from time 0 to t.
ReducedField pde_evolve(const ReducedField& f0, double t,
                        const PhysicalParams& p, const PdeStepperConfig& cfg);

}  // namespace hyperq
