#pragma once

#include <span>
#include <vector>

#include "vml/landau/tables.hpp"
#include "vml/phase_grid/distribution.hpp"

namespace vml {

// Discrete Landau operator in weak (divergence) form. With
// F-tilde = F / mu and D the one-sided central difference,
//   <Q(F,G), psi> = - sum_v sum_v' w w' mu mu' D psi(v) . Phi_reg(v - v')
//                     [F~(v') D G~(v) - D F~(v') G~(v)]
// so mass, momentum and energy of Q(F,F) are conserved to round-off and
// Q(mu, mu) vanishes identically.

// Q(F, G): F is the field partner (integrated against Phi at v'),
// G the test density at v. Result is a density on the grid.
std::vector<double> apply_Q(std::span<const double> F, std::span<const double> G, const CollisionTables& tables);

// L f for f = [f+, f-] at a single x point.
VelocityPair apply_L(const VelocityPair& f, const CollisionTables& tables);

// Channel form of L: with S = f+ + f- and Dl = f+ - f-,
// L+ + L- = apply_L_sum(S) and L+ - L- = apply_L_diff(Dl).
std::vector<double> apply_L_sum(std::span<const double> s, const CollisionTables& tables);
std::vector<double> apply_L_diff(std::span<const double> d, const CollisionTables& tables);

// Gamma(f, g): species-wise collisions of the test pair f against the
// combined field partner g+ + g-.
VelocityPair apply_Gamma(const VelocityPair& f, const VelocityPair& g, const CollisionTables& tables);

// <L f, g> in the quadrature inner product.
double form_L(const VelocityPair& f, const VelocityPair& g, const CollisionTables& tables);

// Pair inner product  w * sum_v (a+ b+ + a- b-).
double pair_inner(const VelocityPair& a, const VelocityPair& b, const VelocityGrid& grid);

// Folded gradient mu^{1/2} D (mu^{-1/2} f) - (v/2) f, exact for
// mu^{1/2} times quadratics. out holds 3 components.
void folded_gradient(std::span<const double> f, const CollisionTables& tables, std::span<double> out);

}  // namespace vml
