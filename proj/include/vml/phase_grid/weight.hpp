#pragma once

#include "vml/phase_grid/velocity_grid.hpp"

namespace vml {

struct WeightParams {
    double gamma = -3.0;
    double ell = 0.0;
    double q = 0.01;
    double theta = 0.25;

    // Throws DomainError unless gamma in [-3,-2), q in (0, 0.1] and theta
    // respects the bracket for the given s.
    void validate(double s) const;
};

// <v>^{-(gamma+2) ell} exp(q <v>^2 / (1+t)^theta)
double weight_w(const WeightParams& p, double t, const Vec3& v);

// Same, with the order replaced by ell_order (w_{ell - |beta|} style calls).
double weight_w(const WeightParams& p, double ell_order, double t, const Vec3& v);

}  // namespace vml
