#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vml/landau/axis_operator.hpp"
#include "vml/landau/convolver.hpp"
#include "vml/landau/kernel.hpp"
#include "vml/phase_grid/velocity_grid.hpp"

namespace vml {

// Immutable data shared by every collision evaluation on one velocity grid.
//
// Velocity derivatives act through three conjugates of the one-sided central
// difference D:  d_half = m^{1/2} D m^{-1/2} (for f = mu^{-1/2} F unknowns),
// d_full = m D m^{-1} (for plain densities F), and D itself. m is the 1-D
// Maxwellian factor, so these are the exact analytic foldings of the mu
// weights and never form mu^{-1/2} explicitly.
class CollisionTables {
public:
    CollisionTables(const VelocityGrid& grid, double gamma);
    // Reuses a previously computed sigma table (e.g. from the cache).
    CollisionTables(const VelocityGrid& grid, double gamma, std::vector<double> sigma);

    const VelocityGrid& grid() const { return grid_; }
    double gamma() const { return gamma_; }
    std::size_t size() const { return grid_.size(); }

    // sigma = Phi_reg * mu, 6 components (00 11 22 01 02 12) of length size().
    std::span<const double> sigma() const { return sigma_; }
    Mat3 sigma_at_node(std::size_t p) const;

    const AxisOperator& d() const { return d_plain_; }
    const AxisOperator& dT() const { return d_plain_t_; }
    const AxisOperator& d_half() const { return d_half_; }
    const AxisOperator& d_half_t() const { return d_half_t_; }
    const AxisOperator& d_full() const { return d_full_; }
    // m^{-1/2} D4 m^{1/2} with D4 the zero-extended fourth-order difference.
    const AxisOperator& force_gradient() const { return force_; }

    std::span<const double> jap_gamma_half() const { return jg_; }     // <v>^{gamma/2}
    std::span<const double> jap_gamma2_half() const { return jg2_; }   // <v>^{(gamma+2)/2}
    std::span<const double> jap_gamma2() const { return jg2full_; }    // <v>^{gamma+2}

    const KernelConvolver& convolver() const { return *conv_; }

private:
    void init_stencils();

    VelocityGrid grid_;
    double gamma_;
    std::vector<double> sigma_;
    AxisOperator d_plain_, d_plain_t_, d_half_, d_half_t_, d_full_, force_;
    std::vector<double> jg_, jg2_, jg2full_;
    std::shared_ptr<const KernelConvolver> conv_;
};

// Throws DomainError for gamma outside [-3,-2) or n_v < 8.
std::shared_ptr<const CollisionTables> build_collision_tables(const VelocityGrid& grid, double gamma);

// Direct (non-FFT) sum  sum_{v'} h^3 Phi_reg(v - v') mu(v')  at an arbitrary
// point; a coincident node uses the self-cell value.
Mat3 sigma_at(const VelocityGrid& grid, double gamma, const Vec3& v);

}  // namespace vml
