#include "vml/phase_grid/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "vml/error.hpp"

namespace vml {

DistributionPair::DistributionPair(std::size_t n_x, std::size_t n_v, Space space)
    : n_x_(n_x), n_v_(n_v), space_(space), data_(2 * n_x * n_v, cplx(0.0, 0.0)) {}

void DistributionPair::fill(cplx value) { std::fill(data_.begin(), data_.end(), value); }

bool DistributionPair::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double DistributionPair::max_imag_ratio() const {
    double im = 0.0, mag = 0.0;
    for (const cplx& z : data_) {
        im = std::max(im, std::abs(z.imag()));
        mag = std::max(mag, std::abs(z));
    }
    return mag > 0.0 ? im / mag : 0.0;
}

void to_fourier(DistributionPair& f, const SpatialGrid& grid) {
    if (f.n_x() != grid.size()) throw ShapeError("distribution does not match spatial grid");
    if (f.space() == Space::fourier) return;
    for (int s = 0; s < 2; ++s) grid.forward_batch(f.species(s).data(), f.n_v());
    f.set_space(Space::fourier);
}

void to_physical(DistributionPair& f, const SpatialGrid& grid) {
    if (f.n_x() != grid.size()) throw ShapeError("distribution does not match spatial grid");
    if (f.space() == Space::physical) return;
    for (int s = 0; s < 2; ++s) grid.inverse_batch(f.species(s).data(), f.n_v());
    for (cplx& z : f.values()) z = cplx(z.real(), 0.0);
    f.set_space(Space::physical);
}

}  // namespace vml
