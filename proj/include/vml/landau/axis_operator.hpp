#pragma once

#include <span>
#include <utility>
#include <vector>

namespace vml {

// A 1-D linear operator on n points applied along one axis of an n^3 field
// (flat index (i*n + j)*n + k). Stored densely, applied through its nonzeros.
class AxisOperator {
public:
    AxisOperator() = default;
    AxisOperator(int n, std::vector<double> dense);

    int n() const { return n_; }
    double operator()(int row, int col) const { return dense_[static_cast<std::size_t>(row) * n_ + col]; }

    // out = (op along axis) in; accumulate adds into out instead.
    void apply(const double* in, double* out, int axis, bool accumulate = false) const;

    AxisOperator transposed() const;
    // diag(left) * op * diag(1/right)
    AxisOperator conjugated(std::span<const double> left, std::span<const double> right) const;

private:
    void rebuild();

    int n_ = 0;
    std::vector<double> dense_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
};

// Second-order central difference with second-order one-sided rows at both
// ends; exact on quadratics.
AxisOperator central_difference(int n, double h);

// Fourth-order central difference, values outside the grid taken as zero.
AxisOperator fourth_order_difference(int n, double h);

}  // namespace vml
