#include "vml/landau/tables.hpp"

#include <cmath>
#include <string>

#include "vml/error.hpp"

namespace vml {

namespace {
constexpr int kPairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
}

CollisionTables::CollisionTables(const VelocityGrid& grid, double gamma) : grid_(grid), gamma_(gamma) {
    init_stencils();
    sigma_.assign(6 * size(), 0.0);
    conv_->convolve_scalar(grid.mu(), sigma_);
}

CollisionTables::CollisionTables(const VelocityGrid& grid, double gamma, std::vector<double> sigma)
    : grid_(grid), gamma_(gamma), sigma_(std::move(sigma)) {
    if (sigma_.size() != 6 * grid.size()) throw ShapeError("sigma table does not match the velocity grid");
    init_stencils();
}

void CollisionTables::init_stencils() {
    const VelocityGrid& grid = grid_;
    const double gamma = gamma_;
    const int n = grid.n();
    const double h = grid.spacing();
    const auto m = grid.axis_maxwellian();
    std::vector<double> sqrt_m(n), ones(n, 1.0);
    for (int i = 0; i < n; ++i) sqrt_m[i] = std::sqrt(m[i]);

    d_plain_ = central_difference(n, h);
    d_plain_t_ = d_plain_.transposed();
    d_half_ = d_plain_.conjugated(sqrt_m, sqrt_m);
    d_half_t_ = d_half_.transposed();
    d_full_ = d_plain_.conjugated(m, m);
    std::vector<double> inv_sqrt_m(n);
    for (int i = 0; i < n; ++i) inv_sqrt_m[i] = 1.0 / sqrt_m[i];
    force_ = fourth_order_difference(n, h).conjugated(inv_sqrt_m, inv_sqrt_m);

    const std::size_t N = grid.size();
    jg_.resize(N);
    jg2_.resize(N);
    jg2full_.resize(N);
    const auto jap = grid.japanese();
    for (std::size_t p = 0; p < N; ++p) {
        jg_[p] = std::pow(jap[p], 0.5 * gamma);
        jg2_[p] = std::pow(jap[p], 0.5 * (gamma + 2.0));
        jg2full_[p] = std::pow(jap[p], gamma + 2.0);
    }

    conv_ = std::make_shared<KernelConvolver>(grid, gamma);
}

Mat3 CollisionTables::sigma_at_node(std::size_t p) const {
    const std::size_t N = size();
    Mat3 s{};
    for (int c = 0; c < 6; ++c) {
        s[kPairs[c][0]][kPairs[c][1]] = sigma_[c * N + p];
        s[kPairs[c][1]][kPairs[c][0]] = sigma_[c * N + p];
    }
    return s;
}

std::shared_ptr<const CollisionTables> build_collision_tables(const VelocityGrid& grid, double gamma) {
    if (!(gamma >= -3.0 && gamma < -2.0))
        throw DomainError("gamma must lie in [-3, -2), got " + std::to_string(gamma));
    if (grid.n() < 8)
        throw DomainError("velocity grid too coarse for collision tables: n_v = " + std::to_string(grid.n()) +
                          " < 8 cannot resolve the Maxwellian core (spacing " + std::to_string(grid.spacing()) +
                          ")");
    return std::make_shared<CollisionTables>(grid, gamma);
}

Mat3 sigma_at(const VelocityGrid& grid, double gamma, const Vec3& v) {
    Mat3 s{};
    const double w = grid.weight();
    const double tol = 1e-12 * grid.spacing();
    const auto mu = grid.mu();
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const Vec3 u = grid.node(p);
        const Vec3 d{v[0] - u[0], v[1] - u[1], v[2] - u[2]};
        if (std::abs(d[0]) < tol && std::abs(d[1]) < tol && std::abs(d[2]) < tol) {
            const double self = self_cell_value(grid.spacing(), gamma) * w * mu[p];
            for (int i = 0; i < 3; ++i) s[i][i] += self;
            continue;
        }
        const Mat3 phi = phi_kernel(d, gamma);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s[i][j] += w * phi[i][j] * mu[p];
    }
    return s;
}

}  // namespace vml
