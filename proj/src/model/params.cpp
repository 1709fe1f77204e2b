#include "hyperq/model/params.hpp"

#include <cmath>

namespace hyperq {

double singularity_time(SingularityIndex l, const PhysicalParams& p) {
    p.validate();
    if (p.mu == 0.0)
        throw NoSingularity(
            "mu = 0: expectation values stay finite for all times");
    return (2.0 * l.l + 1.0) * pi / (32.0 * p.hbar * p.mu);
}

double rotation_angle(double t, const PhysicalParams& p) {
    return 8.0 * p.hbar * p.mu * t;
}

double dilation_growth(double t, const PhysicalParams& p) {
    return std::exp(4.0 * p.omega * t);
}

double energy_dispersion(double eps, const PhysicalParams& p) {
    return 2.0 * p.omega * eps - 4.0 * p.hbar * p.mu * eps * eps;
}

}  // namespace hyperq
