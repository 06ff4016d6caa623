#pragma once

#include <span>

#include "vml/landau/tables.hpp"
#include "vml/phase_grid/distribution.hpp"
#include "vml/phase_grid/weight.hpp"

namespace vml {

// |f|^2_{sigma,w} = sum_v h^3 w^2 [ <v>^{gamma+2} f^2
//                                  + <v>^{gamma} (grad f . v/|v|)^2
//                                  + <v>^{gamma+2} |grad f - (grad f . v/|v|) v/|v||^2 ]
// grad is the folded gradient. At v = 0 the whole gradient takes the
// transverse weight. An empty weight span means w = 1.
struct SigmaNormSpec {
    WeightParams weight{};
    double ell_order = 0.0;
    double t = 0.0;
    bool weighted = false;
};

std::vector<double> weight_field(const VelocityGrid& grid, const WeightParams& p, double ell_order, double t);

double sigma_norm2(std::span<const double> f, const CollisionTables& tables, std::span<const double> w = {});
double sigma_norm(std::span<const double> f, const CollisionTables& tables, const SigmaNormSpec& spec = {});

// The three contributions separately: zeroth, parallel, transverse.
std::array<double, 3> sigma_norm2_parts(std::span<const double> f, const CollisionTables& tables,
                                        std::span<const double> w = {});

double sigma_norm2(const VelocityPair& f, const CollisionTables& tables, std::span<const double> w = {});

}  // namespace vml
