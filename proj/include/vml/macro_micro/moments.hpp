#pragma once

#include <array>
#include <span>
#include <vector>

#include "vml/macro_micro/projection.hpp"

namespace vml {

// A_{mj}(g) = <(v_m v_j - delta_mj) mu^{1/2}, g>,
// B_j(g)    = (1/10) <(|v|^2 - 5) v_j mu^{1/2}, g>.
std::array<double, 6> moment_A(std::span<const double> g, const VelocityGrid& grid);
std::array<double, 3> moment_B(std::span<const double> g, const VelocityGrid& grid);

// Per-x moments of a distribution: A and B of f+ + f-, and
// G = <v mu^{1/2}, ({I-P}f)+ - ({I-P}f)->. Components of A in the order
// 00 11 22 01 02 12.
struct MomentSet {
    std::array<std::vector<cplx>, 6> A;
    std::array<std::vector<cplx>, 3> Bv;
    std::array<std::vector<cplx>, 3> G;
};

MomentSet moments(const DistributionPair& f, const Projection& proj);

// <v mu^{1/2}, f+ - f-> per x: the current.
std::array<std::vector<cplx>, 3> current(const DistributionPair& f, const VelocityGrid& grid);

}  // namespace vml
