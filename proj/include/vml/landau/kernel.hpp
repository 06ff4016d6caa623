#pragma once

#include <array>

#include "vml/phase_grid/velocity_grid.hpp"

namespace vml {

using Mat3 = std::array<std::array<double, 3>, 3>;

// (delta_ij - v_i v_j / |v|^2) |v|^{gamma+2}. Throws DomainError at v = 0.
Mat3 phi_kernel(const Vec3& v, double gamma);

// Diagonal entry of the coincident-node term of a grid convolution with
// spacing h: the kernel integrated over a ball of volume h^3, divided by
// h^3. The projector averages to (2/3) I over angles, so the term is this
// value times I.
double self_cell_value(double h, double gamma);

}  // namespace vml
