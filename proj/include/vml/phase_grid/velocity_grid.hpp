#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace vml {

using Vec3 = std::array<double, 3>;

// (2 pi)^{-3/2} exp(-|v|^2 / 2)
double maxwellian(const Vec3& v);

// <v> = sqrt(1 + |v|^2)
double japanese(const Vec3& v);

// Cell-centred tensor grid on [-v_max, v_max)^3: node i sits at
// -v_max + (i + 1/2) h with h = 2 v_max / n, so the node set is exactly
// symmetric under v -> -v. Quadrature is the midpoint rule with weight h^3.
// Flat index (i * n + j) * n + k, k fastest.
class VelocityGrid {
public:
    VelocityGrid(int n, double v_max);

    int n() const { return n_; }
    double v_max() const { return v_max_; }
    double spacing() const { return h_; }
    double weight() const { return h_ * h_ * h_; }
    std::size_t size() const { return size_; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }
    std::array<int, 3> unflatten(std::size_t idx) const {
        const int k = static_cast<int>(idx % n_);
        const int j = static_cast<int>((idx / n_) % n_);
        const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
        return {i, j, k};
    }
    Vec3 node(std::size_t idx) const { return {v_[0][idx], v_[1][idx], v_[2][idx]}; }

    std::span<const double> axis() const { return axis_; }
    // 1-D Maxwellian factor m(v) = (2 pi)^{-1/2} exp(-v^2/2) at the axis nodes.
    std::span<const double> axis_maxwellian() const { return axis_mu_; }

    std::span<const double> v(int component) const { return v_[component]; }
    std::span<const double> speed2() const { return speed2_; }
    std::span<const double> mu() const { return mu_; }
    std::span<const double> sqrt_mu() const { return sqrt_mu_; }
    std::span<const double> japanese() const { return jap_; }

    // Midpoint quadrature of g and of the product a*b.
    double integrate(std::span<const double> g) const;
    double inner(std::span<const double> a, std::span<const double> b) const;

    std::vector<double> sample(double (*fn)(const Vec3&)) const;
    template <class F>
    std::vector<double> tabulate(F&& fn) const {
        std::vector<double> out(size_);
        for (std::size_t p = 0; p < size_; ++p) out[p] = fn(node(p));
        return out;
    }

private:
    int n_;
    double v_max_;
    double h_;
    std::size_t size_;
    std::vector<double> axis_, axis_mu_;
    std::array<std::vector<double>, 3> v_;
    std::vector<double> speed2_, mu_, sqrt_mu_, jap_;
};

}  // namespace vml
