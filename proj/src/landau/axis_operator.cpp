#include "vml/landau/axis_operator.hpp"

#include <algorithm>
#include <cstddef>

#include "vml/error.hpp"
#include "vml/simd/kernels.hpp"

namespace vml {

AxisOperator::AxisOperator(int n, std::vector<double> dense) : n_(n), dense_(std::move(dense)) {
    if (dense_.size() != static_cast<std::size_t>(n) * n) throw ShapeError("axis operator must be n x n");
    rebuild();
}

void AxisOperator::rebuild() {
    rows_.assign(n_, {});
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c)
            if (double v = (*this)(r, c); v != 0.0) rows_[r].emplace_back(c, v);
}

void AxisOperator::apply(const double* in, double* out, int axis, bool accumulate) const {
    const std::size_t n = n_;
    const std::size_t total = n * n * n;
    const auto& K = simd::kernels();
    if (!accumulate) std::fill(out, out + total, 0.0);
    if (axis == 0) {
        const std::size_t block = n * n;
        for (std::size_t r = 0; r < n; ++r)
            for (const auto& [c, w] : rows_[r]) K.axpy(block, w, in + c * block, out + r * block);
    } else if (axis == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double* src = in + i * n * n;
            double* dst = out + i * n * n;
            for (std::size_t r = 0; r < n; ++r)
                for (const auto& [c, w] : rows_[r]) K.axpy(n, w, src + c * n, dst + r * n);
        }
    } else {
        for (std::size_t line = 0; line < n * n; ++line) {
            const double* src = in + line * n;
            double* dst = out + line * n;
            for (std::size_t r = 0; r < n; ++r) {
                double acc = 0.0;
                for (const auto& [c, w] : rows_[r]) acc += w * src[c];
                dst[r] += acc;
            }
        }
    }
}

AxisOperator AxisOperator::transposed() const {
    std::vector<double> t(dense_.size());
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) t[static_cast<std::size_t>(c) * n_ + r] = (*this)(r, c);
    return AxisOperator(n_, std::move(t));
}

AxisOperator AxisOperator::conjugated(std::span<const double> left, std::span<const double> right) const {
    std::vector<double> t(dense_.size());
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            const double v = (*this)(r, c);
            t[static_cast<std::size_t>(r) * n_ + c] = v == 0.0 ? 0.0 : left[r] * v / right[c];
        }
    return AxisOperator(n_, std::move(t));
}

AxisOperator central_difference(int n, double h) {
    if (n < 3) throw DomainError("central difference needs at least 3 points");
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int r, int c) -> double& { return d[static_cast<std::size_t>(r) * n + c]; };
    const double s = 1.0 / (2.0 * h);
    at(0, 0) = -3.0 * s;
    at(0, 1) = 4.0 * s;
    at(0, 2) = -1.0 * s;
    for (int r = 1; r < n - 1; ++r) {
        at(r, r - 1) = -s;
        at(r, r + 1) = s;
    }
    at(n - 1, n - 1) = 3.0 * s;
    at(n - 1, n - 2) = -4.0 * s;
    at(n - 1, n - 3) = 1.0 * s;
    return AxisOperator(n, std::move(d));
}

AxisOperator fourth_order_difference(int n, double h) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    const double s = 1.0 / (12.0 * h);
    const int off[4] = {-2, -1, 1, 2};
    const double w[4] = {1.0, -8.0, 8.0, -1.0};
    for (int r = 0; r < n; ++r)
        for (int m = 0; m < 4; ++m) {
            const int c = r + off[m];
            if (c >= 0 && c < n) d[static_cast<std::size_t>(r) * n + c] = w[m] * s;
        }
    return AxisOperator(n, std::move(d));
}

}  // namespace vml
