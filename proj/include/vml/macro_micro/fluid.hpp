#pragma once

#include <array>
#include <vector>

#include "vml/macro_micro/projection.hpp"
#include "vml/phase_grid/spatial_grid.hpp"

namespace vml {

// Spectral macroscopic data saved along a trajectory.
struct MacroSnapshot {
    double t = 0.0;
    std::vector<cplx> a_plus, a_minus;
    std::array<std::vector<cplx>, 3> b;
    std::array<std::vector<cplx>, 3> G;
};

struct FluidResiduals {
    std::vector<double> t;
    std::vector<double> continuity;  // || d_t (a+ + a-)/2 + div b ||
    std::vector<double> charge;      // || d_t (a+ - a-) + div G ||
    double max_continuity = 0.0;
    double max_charge = 0.0;
};

// Second-order finite differences in time (centred inside, one-sided at the
// ends; nonuniform spacing allowed), spectral divergence in x.
// Macroscopic fields and G of a Fourier-space distribution at time t.
MacroSnapshot macro_snapshot(const DistributionPair& f, const Projection& proj, double t);

FluidResiduals fluid_residuals(const std::vector<MacroSnapshot>& history, const SpatialGrid& grid);

}  // namespace vml
