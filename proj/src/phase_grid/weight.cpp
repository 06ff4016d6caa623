#include "vml/phase_grid/weight.hpp"

#include <cmath>
#include <string>

#include "vml/error.hpp"

namespace vml {

void WeightParams::validate(double s) const {
    if (!(gamma >= -3.0 && gamma < -2.0))
        throw DomainError("gamma must lie in [-3, -2), got " + std::to_string(gamma));
    if (!(q > 0.0 && q <= 0.1)) throw DomainError("q must lie in (0, 0.1], got " + std::to_string(q));
    if (!(s >= 0.5 && s < 1.5)) throw DomainError("s must lie in [1/2, 3/2), got " + std::to_string(s));
    const double cap = s <= 1.0 ? 0.5 * s : 0.5 * s - 0.5;
    if (!(theta > 0.0 && theta <= cap + 1e-12))
        throw DomainError("theta must lie in (0, " + std::to_string(cap) + "] for s = " + std::to_string(s));
}

double weight_w(const WeightParams& p, double ell_order, double t, const Vec3& v) {
    if (t < 0.0) throw DomainError("weight requires t >= 0");
    const double jv2 = 1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    const double poly = std::pow(jv2, -0.5 * (p.gamma + 2.0) * ell_order);
    return poly * std::exp(p.q * jv2 / std::pow(1.0 + t, p.theta));
}

double weight_w(const WeightParams& p, double t, const Vec3& v) { return weight_w(p, p.ell, t, v); }

}  // namespace vml
