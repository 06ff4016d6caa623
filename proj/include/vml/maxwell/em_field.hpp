#pragma once

#include <array>
#include <vector>

#include "vml/phase_grid/distribution.hpp"
#include "vml/phase_grid/spatial_grid.hpp"
#include "vml/phase_grid/velocity_grid.hpp"

namespace vml {

using VectorField = std::array<std::vector<cplx>, 3>;

VectorField zero_vector_field(std::size_t n);

// Electromagnetic field, spectral coefficients on the spatial grid.
struct EMField {
    VectorField E, B;

    explicit EMField(std::size_t n = 0) : E(zero_vector_field(n)), B(zero_vector_field(n)) {}
    std::size_t size() const { return E[0].size(); }
};

struct FieldRate {
    VectorField dE, dB;
};

VectorField curl(const VectorField& u, const SpatialGrid& grid);
std::vector<cplx> divergence(const VectorField& u, const SpatialGrid& grid);
double l2_norm(const std::vector<cplx>& spectral);

// Charge a+ - a- = <mu^{1/2}, f+ - f-> per mode; f in Fourier space.
std::vector<cplx> charge_density(const DistributionPair& f, const VelocityGrid& vgrid);

// dE/dt = curl B - <v mu^{1/2}, f+ - f->,  dB/dt = -curl E.
FieldRate field_rhs(const EMField& em, const DistributionPair& f, const SpatialGrid& grid, const VelocityGrid& vgrid);

// || div E - (a+ - a-) ||
double gauss_residual(const EMField& em, const DistributionPair& f, const SpatialGrid& grid, const VelocityGrid& vgrid);
// || div B ||
double div_B(const EMField& em, const SpatialGrid& grid);

double field_energy(const EMField& em);

// Replace the longitudinal part of E by the Gauss-law solution and remove
// the longitudinal part of B. Throws DomainError for a net charge.
EMField make_compatible(const EMField& guess, const DistributionPair& f, const SpatialGrid& grid,
                        const VelocityGrid& vgrid);

}  // namespace vml
