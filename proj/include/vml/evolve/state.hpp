#pragma once

#include <memory>

#include "vml/evolve/config.hpp"
#include "vml/landau/tables.hpp"
#include "vml/macro_micro/projection.hpp"
#include "vml/maxwell/em_field.hpp"
#include "vml/phase_grid/distribution.hpp"
#include "vml/phase_grid/spatial_grid.hpp"

namespace vml {

// Grids and operator tables shared by every state of one run.
struct Context {
    RunConfig config;
    std::shared_ptr<const SpatialGrid> space;
    std::shared_ptr<const CollisionTables> tables;
    std::shared_ptr<const Projection> projection;

    const VelocityGrid& vgrid() const { return tables->grid(); }
    const SpatialGrid& sgrid() const { return *space; }
};

// Validates the config and builds grids, collision tables and projection.
// When cache_dir is nonempty the sigma table is read from / written to it.
std::shared_ptr<const Context> make_context(const RunConfig& config, const std::string& cache_dir = "");

// f in Fourier-x representation, spectral fields, time.
struct PhaseState {
    DistributionPair f;
    EMField em;
    double t = 0.0;

    PhaseState() = default;
    explicit PhaseState(const Context& ctx);

    bool all_finite() const;
};

// Physical-space copy of f (imaginary round-off dropped).
DistributionPair physical_f(const PhaseState& s, const Context& ctx);

}  // namespace vml
