#pragma once

#include <span>
#include <utility>
#include <vector>

#include "vml/phase_grid/spatial_grid.hpp"

namespace vml {

// sum over |alpha| = j of prod_i kappa_i^{2 alpha_i}: the symbol of
// sum_{|alpha|=j} |d^alpha u|^2.
double multiindex_symbol(const std::array<double, 3>& kappa, int j);

// Multiplies spectral coefficients by |kappa|^s. The k = 0 coefficient is
// zeroed for s != 0 and kept for s = 0.
std::vector<cplx> lambda_s_apply(std::span<const cplx> spectral, const SpatialGrid& grid, double s);

// ||Lambda^{-s} u||, k = 0 excluded.
double homogeneous_norm(std::span<const cplx> spectral, const SpatialGrid& grid, double s);

// sum_{|alpha| = j} ||d^alpha u||^2
double derivative_energy(std::span<const cplx> spectral, const SpatialGrid& grid, int j);

// ||u||_{H^n}^2 = sum_{|alpha| <= n} ||d^alpha u||^2
double sobolev_energy(std::span<const cplx> spectral, const SpatialGrid& grid, int n);

// (||u||_{H^-s dot}, ||u||_{H^n}) from spectral coefficients.
std::pair<double, double> sobolev_norms(std::span<const cplx> spectral, const SpatialGrid& grid, double s, int n);

// Same for a physical-space real field.
std::pair<double, double> sobolev_norms_physical(std::span<const double> field, const SpatialGrid& grid, double s,
                                                 int n);

}  // namespace vml
