#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace vml {

using cplx = std::complex<double>;

// Periodic box of side L with n_x points along each active axis and a single
// point along inactive axes. Modes use the wavevector kappa = 2 pi k / L.
//
// Transforms are normalised so that sum_k |u_k|^2 = dV * sum_x |u(x)|^2,
// with dV the cell volume over active axes: the spectral coefficients carry
// the L^2(torus) norm directly.
class SpatialGrid {
public:
    SpatialGrid(double box_length, int n_x, std::array<bool, 3> active);
    ~SpatialGrid();
    SpatialGrid(const SpatialGrid&) = delete;
    SpatialGrid& operator=(const SpatialGrid&) = delete;

    double box_length() const { return box_length_; }
    int n_x() const { return n_x_; }
    bool active(int axis) const { return active_[axis]; }
    std::array<bool, 3> active_axes() const { return active_; }
    int dims() const { return dims_; }
    std::array<int, 3> shape() const { return shape_; }
    std::size_t size() const { return size_; }
    double cell_volume() const { return cell_volume_; }
    double volume() const { return cell_volume_ * static_cast<double>(size_); }

    std::array<int, 3> frequency(std::size_t m) const { return freq_[m]; }
    std::array<double, 3> wavevector(std::size_t m) const { return kappa_[m]; }
    double wavenumber(std::size_t m) const { return knorm_[m]; }
    std::span<const double> wavenumbers() const { return knorm_; }
    std::array<double, 3> position(std::size_t m) const;

    // Flat index of -k.
    std::size_t conjugate(std::size_t m) const { return conj_[m]; }
    // Modes whose conjugate has an index >= their own: together they carry
    // every independent coefficient of a real field.
    std::span<const std::size_t> half_modes() const { return half_; }

    // Scalar field transforms (length size()).
    void forward(const cplx* in, cplx* out) const;
    void inverse(const cplx* in, cplx* out) const;
    std::vector<cplx> forward(std::span<const cplx> in) const;
    std::vector<cplx> forward(std::span<const double> in) const;
    std::vector<cplx> inverse(std::span<const cplx> in) const;

    // In-place transforms of `count` interleaved fields stored [x][count].
    void forward_batch(cplx* data, std::size_t count) const;
    void inverse_batch(cplx* data, std::size_t count) const;

private:
    struct Plans;
    const Plans& plans(std::size_t count) const;
    void execute(cplx* data, std::size_t count, bool forward) const;

    double box_length_;
    int n_x_;
    std::array<bool, 3> active_;
    int dims_;
    std::array<int, 3> shape_;
    std::size_t size_;
    double cell_volume_;
    std::vector<std::array<int, 3>> freq_;
    std::vector<std::array<double, 3>> kappa_;
    std::vector<double> knorm_;
    std::vector<std::size_t> conj_, half_;
    mutable std::mutex plan_mutex_;
    mutable std::map<std::size_t, std::unique_ptr<Plans>> plan_cache_;
};

}  // namespace vml
