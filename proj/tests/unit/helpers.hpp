#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "vml/phase_grid/distribution.hpp"
#include "vml/phase_grid/velocity_grid.hpp"

namespace vml::test {

inline double norm2(const VelocityPair& f) {
    double acc = 0.0;
    for (int s = 0; s < 2; ++s)
        for (double x : f[s]) acc += x * x;
    return std::sqrt(acc);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

inline double pair_diff(const VelocityPair& a, const VelocityPair& b) {
    return std::max(max_abs_diff(a.plus, b.plus), max_abs_diff(a.minus, b.minus));
}

inline double pair_max(const VelocityPair& a) { return std::max(max_abs(a.plus), max_abs(a.minus)); }

// Gaussian noise with a mu^{1/4} envelope.
inline VelocityPair noise_pair(const VelocityGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    VelocityPair f(g.size());
    for (int s = 0; s < 2; ++s)
        for (std::size_t p = 0; p < g.size(); ++p) f[s][p] = N(rng) * std::pow(g.mu()[p], 0.25);
    return f;
}

inline VelocityPair from_fn(const VelocityGrid& g, double (*plus)(const Vec3&), double (*minus)(const Vec3&)) {
    VelocityPair f(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        const Vec3 v = g.node(p);
        f.plus[p] = plus ? plus(v) : 0.0;
        f.minus[p] = minus ? minus(v) : 0.0;
    }
    return f;
}

}  // namespace vml::test
