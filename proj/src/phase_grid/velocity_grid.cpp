#include "vml/phase_grid/velocity_grid.hpp"

#include <cmath>
#include <numbers>

#include "vml/error.hpp"
#include "vml/simd/kernels.hpp"

namespace vml {

double maxwellian(const Vec3& v) {
    const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    return std::pow(2.0 * std::numbers::pi, -1.5) * std::exp(-0.5 * r2);
}

double japanese(const Vec3& v) { return std::sqrt(1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

VelocityGrid::VelocityGrid(int n, double v_max) : n_(n), v_max_(v_max) {
    if (n < 2) throw DomainError("velocity grid needs at least 2 points per axis");
    if (!(v_max > 0.0)) throw DomainError("velocity cutoff must be positive");
    h_ = 2.0 * v_max / n;
    size_ = static_cast<std::size_t>(n) * n * n;

    axis_.resize(n);
    for (int i = 0; i < n; ++i) axis_[i] = -v_max + (i + 0.5) * h_;
    for (int i = 0; i < n / 2; ++i) axis_[n - 1 - i] = -axis_[i];
    if (n % 2 == 1) axis_[n / 2] = 0.0;

    const double norm1 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    axis_mu_.resize(n);
    for (int i = 0; i < n; ++i) axis_mu_[i] = norm1 * std::exp(-0.5 * axis_[i] * axis_[i]);

    for (auto& c : v_) c.resize(size_);
    speed2_.resize(size_);
    mu_.resize(size_);
    sqrt_mu_.resize(size_);
    jap_.resize(size_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t p = index(i, j, k);
                v_[0][p] = axis_[i];
                v_[1][p] = axis_[j];
                v_[2][p] = axis_[k];
                // Grouping keeps these exactly invariant under v2 <-> v3.
                speed2_[p] = axis_[i] * axis_[i] + (axis_[j] * axis_[j] + axis_[k] * axis_[k]);
                mu_[p] = axis_mu_[i] * (axis_mu_[j] * axis_mu_[k]);
                sqrt_mu_[p] = std::sqrt(mu_[p]);
                jap_[p] = std::sqrt(1.0 + speed2_[p]);
            }
}

double VelocityGrid::integrate(std::span<const double> g) const {
    if (g.size() != size_) throw ShapeError("velocity field size does not match grid");
    double acc = 0.0;
    for (double x : g) acc += x;
    return acc * weight();
}

double VelocityGrid::inner(std::span<const double> a, std::span<const double> b) const {
    if (a.size() != size_ || b.size() != size_) throw ShapeError("velocity field size does not match grid");
    return simd::kernels().dot(size_, a.data(), b.data()) * weight();
}

std::vector<double> VelocityGrid::sample(double (*fn)(const Vec3&)) const {
    std::vector<double> out(size_);
    for (std::size_t p = 0; p < size_; ++p) out[p] = fn(node(p));
    return out;
}

}  // namespace vml
