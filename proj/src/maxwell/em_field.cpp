#include "vml/maxwell/em_field.hpp"

#include <algorithm>
#include <cmath>

#include "vml/error.hpp"
#include "vml/macro_micro/moments.hpp"

namespace vml {

namespace {
const cplx I(0.0, 1.0);

void require(const DistributionPair& f, const SpatialGrid& grid, const VelocityGrid& vgrid) {
    if (f.space() != Space::fourier) throw DomainError("field operations need f in Fourier-x representation");
    if (f.n_x() != grid.size() || f.n_v() != vgrid.size()) throw ShapeError("distribution does not match grids");
}
void require(const EMField& em, const SpatialGrid& grid) {
    if (em.size() != grid.size()) throw ShapeError("field does not match spatial grid");
}
}  // namespace

VectorField zero_vector_field(std::size_t n) {
    return {std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
}

VectorField curl(const VectorField& u, const SpatialGrid& grid) {
    VectorField out = zero_vector_field(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
        const auto k = grid.wavevector(m);
        out[0][m] = I * (k[1] * u[2][m] - k[2] * u[1][m]);
        out[1][m] = I * (k[2] * u[0][m] - k[0] * u[2][m]);
        out[2][m] = I * (k[0] * u[1][m] - k[1] * u[0][m]);
    }
    return out;
}

std::vector<cplx> divergence(const VectorField& u, const SpatialGrid& grid) {
    std::vector<cplx> out(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
        const auto k = grid.wavevector(m);
        out[m] = I * (k[0] * u[0][m] + k[1] * u[1][m] + k[2] * u[2][m]);
    }
    return out;
}

double l2_norm(const std::vector<cplx>& s) {
    double acc = 0.0;
    for (const cplx& z : s) acc += std::norm(z);
    return std::sqrt(acc);
}

std::vector<cplx> charge_density(const DistributionPair& f, const VelocityGrid& vgrid) {
    std::vector<cplx> rho(f.n_x());
    const auto sq = vgrid.sqrt_mu();
    for (std::size_t x = 0; x < f.n_x(); ++x) {
        const auto fp = f.block(0, x);
        const auto fm = f.block(1, x);
        cplx acc(0.0);
        for (std::size_t p = 0; p < vgrid.size(); ++p) acc += sq[p] * (fp[p] - fm[p]);
        rho[x] = acc * vgrid.weight();
    }
    return rho;
}

FieldRate field_rhs(const EMField& em, const DistributionPair& f, const SpatialGrid& grid,
                    const VelocityGrid& vgrid) {
    require(f, grid, vgrid);
    require(em, grid);
    FieldRate r;
    r.dE = curl(em.B, grid);
    r.dB = curl(em.E, grid);
    const auto j = current(f, vgrid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < grid.size(); ++m) {
            r.dE[c][m] -= j[c][m];
            r.dB[c][m] = -r.dB[c][m];
        }
    return r;
}

double gauss_residual(const EMField& em, const DistributionPair& f, const SpatialGrid& grid,
                      const VelocityGrid& vgrid) {
    require(f, grid, vgrid);
    require(em, grid);
    auto div = divergence(em.E, grid);
    const auto rho = charge_density(f, vgrid);
    for (std::size_t m = 0; m < div.size(); ++m) div[m] -= rho[m];
    return l2_norm(div);
}

double div_B(const EMField& em, const SpatialGrid& grid) {
    require(em, grid);
    return l2_norm(divergence(em.B, grid));
}

double field_energy(const EMField& em) {
    double acc = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < em.size(); ++m) acc += std::norm(em.E[c][m]) + std::norm(em.B[c][m]);
    return acc;
}

EMField make_compatible(const EMField& guess, const DistributionPair& f, const SpatialGrid& grid,
                        const VelocityGrid& vgrid) {
    require(f, grid, vgrid);
    require(guess, grid);
    const auto rho = charge_density(f, vgrid);
    double scale = 0.0;
    for (const cplx& z : rho) scale = std::max(scale, std::abs(z));
    if (std::abs(rho[0]) > 1e-13 + 1e-10 * scale)
        throw DomainError("net charge " + std::to_string(std::abs(rho[0])) +
                          " in the k = 0 mode: no periodic solution of Gauss's law");
    EMField out = guess;
    for (std::size_t m = 0; m < grid.size(); ++m) {
        const auto k = grid.wavevector(m);
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (k2 == 0.0) continue;
        cplx kE(0.0), kB(0.0);
        for (int c = 0; c < 3; ++c) {
            kE += k[c] * guess.E[c][m];
            kB += k[c] * guess.B[c][m];
        }
        for (int c = 0; c < 3; ++c) {
            out.E[c][m] = guess.E[c][m] - k[c] * kE / k2 - I * k[c] * rho[m] / k2;
            out.B[c][m] = guess.B[c][m] - k[c] * kB / k2;
        }
    }
    return out;
}

}  // namespace vml
