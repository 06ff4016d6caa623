#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vml/phase_grid/spatial_grid.hpp"

namespace vml {

enum class Space { physical, fourier };

// f = [f+, f-] sampled on (x, v); storage [species][x][v], v contiguous.
// In physical space the values are real up to round-off.
class DistributionPair {
public:
    DistributionPair() = default;
    DistributionPair(std::size_t n_x, std::size_t n_v, Space space = Space::physical);

    std::size_t n_x() const { return n_x_; }
    std::size_t n_v() const { return n_v_; }
    std::size_t size() const { return data_.size(); }
    Space space() const { return space_; }
    void set_space(Space s) { space_ = s; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::span<cplx> values() { return data_; }
    std::span<const cplx> values() const { return data_; }

    std::span<cplx> species(int s) { return {data_.data() + s * n_x_ * n_v_, n_x_ * n_v_}; }
    std::span<const cplx> species(int s) const { return {data_.data() + s * n_x_ * n_v_, n_x_ * n_v_}; }
    std::span<cplx> block(int s, std::size_t x) { return {data_.data() + (s * n_x_ + x) * n_v_, n_v_}; }
    std::span<const cplx> block(int s, std::size_t x) const {
        return {data_.data() + (s * n_x_ + x) * n_v_, n_v_};
    }

    void fill(cplx value);
    bool all_finite() const;
    // Largest |Im| relative to the largest |value|.
    double max_imag_ratio() const;

private:
    std::size_t n_x_ = 0;
    std::size_t n_v_ = 0;
    Space space_ = Space::physical;
    std::vector<cplx> data_;
};

void to_fourier(DistributionPair& f, const SpatialGrid& grid);
// Returns to physical space and drops the round-off imaginary part.
void to_physical(DistributionPair& f, const SpatialGrid& grid);

// Real velocity-space pair at a single x point or mode component.
struct VelocityPair {
    std::vector<double> plus, minus;

    VelocityPair() = default;
    explicit VelocityPair(std::size_t n) : plus(n, 0.0), minus(n, 0.0) {}
    std::vector<double>& operator[](int s) { return s == 0 ? plus : minus; }
    const std::vector<double>& operator[](int s) const { return s == 0 ? plus : minus; }
    std::size_t size() const { return plus.size(); }
};

}  // namespace vml
