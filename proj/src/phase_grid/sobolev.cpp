#include "vml/phase_grid/sobolev.hpp"

#include <cmath>

#include "vml/error.hpp"

namespace vml {

double multiindex_symbol(const std::array<double, 3>& kappa, int j) {
    if (j < 0) throw DomainError("derivative order must be nonnegative");
    const double x = kappa[0] * kappa[0], y = kappa[1] * kappa[1], z = kappa[2] * kappa[2];
    // Complete homogeneous symmetric polynomial h_j(x, y, z).
    double total = 0.0;
    double xa = 1.0;
    for (int a = 0; a <= j; ++a) {
        double yb = 1.0;
        for (int b = 0; a + b <= j; ++b) {
            total += xa * yb * std::pow(z, j - a - b);
            yb *= y;
        }
        xa *= x;
    }
    return total;
}

std::vector<cplx> lambda_s_apply(std::span<const cplx> spectral, const SpatialGrid& grid, double s) {
    if (spectral.size() != grid.size()) throw ShapeError("spectral field does not match spatial grid");
    std::vector<cplx> out(spectral.begin(), spectral.end());
    if (s == 0.0) return out;
    for (std::size_t m = 0; m < out.size(); ++m) {
        const double k = grid.wavenumber(m);
        out[m] = k > 0.0 ? out[m] * std::pow(k, s) : cplx(0.0, 0.0);
    }
    return out;
}

double homogeneous_norm(std::span<const cplx> spectral, const SpatialGrid& grid, double s) {
    if (spectral.size() != grid.size()) throw ShapeError("spectral field does not match spatial grid");
    double acc = 0.0;
    for (std::size_t m = 0; m < spectral.size(); ++m) {
        const double k = grid.wavenumber(m);
        if (k > 0.0) acc += std::norm(spectral[m]) * std::pow(k, -2.0 * s);
    }
    return std::sqrt(acc);
}

double derivative_energy(std::span<const cplx> spectral, const SpatialGrid& grid, int j) {
    if (spectral.size() != grid.size()) throw ShapeError("spectral field does not match spatial grid");
    double acc = 0.0;
    for (std::size_t m = 0; m < spectral.size(); ++m)
        acc += std::norm(spectral[m]) * multiindex_symbol(grid.wavevector(m), j);
    return acc;
}

double sobolev_energy(std::span<const cplx> spectral, const SpatialGrid& grid, int n) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += derivative_energy(spectral, grid, j);
    return acc;
}

std::pair<double, double> sobolev_norms(std::span<const cplx> spectral, const SpatialGrid& grid, double s, int n) {
    return {homogeneous_norm(spectral, grid, s), std::sqrt(sobolev_energy(spectral, grid, n))};
}

std::pair<double, double> sobolev_norms_physical(std::span<const double> field, const SpatialGrid& grid, double s,
                                                 int n) {
    const std::vector<cplx> hat = grid.forward(field);
    return sobolev_norms(hat, grid, s, n);
}

}  // namespace vml
