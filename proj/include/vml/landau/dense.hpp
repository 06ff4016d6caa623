#pragma once

#include <Eigen/Dense>

#include "vml/landau/tables.hpp"

namespace vml {

// Explicit 2N x 2N matrix of L in the (+,-) ordering, built from the pair
// sum with sigma and Phi_reg evaluated directly (no FFT). Restricted to
// n_v <= 12.
Eigen::MatrixXd assemble_L_dense(const CollisionTables& tables);

// N x N matrices of the sum and difference channels built the same way.
struct DenseChannels {
    Eigen::MatrixXd sum;   // L+ + L- as a function of f+ + f-
    Eigen::MatrixXd diff;  // L+ - L- as a function of f+ - f-
};
DenseChannels assemble_L_channels(const CollisionTables& tables);

}  // namespace vml
