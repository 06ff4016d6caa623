#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "vml/phase_grid/velocity_grid.hpp"

namespace vml {

// Discrete convolution with the regularised Landau kernel on the velocity
// grid,  (Phi * g)(v) = sum_{v'} h^3 Phi_reg(v - v') g(v'),  evaluated with
// zero-padded FFTs of side 2n. Phi_reg equals phi_kernel off the diagonal
// and self_cell_value on it.
class KernelConvolver {
public:
    KernelConvolver(const VelocityGrid& grid, double gamma);
    ~KernelConvolver();
    KernelConvolver(const KernelConvolver&) = delete;
    KernelConvolver& operator=(const KernelConvolver&) = delete;

    int n() const { return n_; }

    // out (6 components, order 00 11 22 01 02 12) = Phi * g
    void convolve_scalar(std::span<const double> g, std::span<double> out) const;
    // out (3 components) = Phi * a for a 3-component field a
    void convolve_vector(std::span<const double> a, std::span<double> out) const;

private:
    void forward(const double* field, std::complex<double>* spec) const;
    void inverse_add(std::complex<double>* spec, double* field) const;

    int n_;
    int p_;
    std::size_t padded_;
    std::size_t spectral_;
    std::vector<double> kernel_hat_;  // 6 components, each duplicated per re/im
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

}  // namespace vml
