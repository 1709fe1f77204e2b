#pragma once

#include "hyperq/core.hpp"

namespace hyperq {

// The parameter triple of the saddle-region Hamiltonian
//   H = 2 omega (xp - i hbar/2) - 4 mu (xp - i hbar/2)^2.
// omega is the linear (classical dilation) rate, mu the quadratic
// (quantum dispersion) strength.
struct PhysicalParams {
    double hbar = 1.0;
    double omega = 0.0;
    double mu = 1.0;

    void validate() const {
        if (!(hbar > 0.0)) throw ConfigError("hbar must be > 0");
        if (!std::isfinite(omega) || !std::isfinite(mu))
            throw ConfigError("omega and mu must be finite");
    }
};

struct SingularityIndex {
    int l = 0;
};

// t_l = (2l+1) pi / (32 hbar mu). mu enters as signed: negative mu gives
// time-reversed (negative) singularity times; mu = 0 pushes them to
// infinity and throws.
double singularity_time(SingularityIndex l, const PhysicalParams& p);

// theta(t) = 8 hbar mu t, deliberately unwrapped: large l singularity
// angles pi/4 + l pi/2 must stay distinguishable.
double rotation_angle(double t, const PhysicalParams& p);

// e^{4 omega t}, the classical dilation factor of the second moment.
double dilation_growth(double t, const PhysicalParams& p);

// E(eps) = 2 omega eps - 4 hbar mu eps^2, in angular-frequency units: the
// propagator phase is exp(-i E t) with no further hbar divisor.
double energy_dispersion(double eps, const PhysicalParams& p);

}  // namespace hyperq
