#pragma once

#include <array>
#include <memory>
#include <vector>

#include "vml/evolve/propagator.hpp"
#include "vml/evolve/state.hpp"

namespace vml {

// Time derivative of (f, E, B); df in Fourier-x representation.
struct StateRate {
    DistributionPair df;
    FieldRate fields;
};

// Full right-hand side
//   df/dt = -v.grad_x f - q0 (E + v x B).grad_v f + E.v mu^{1/2} q1 - L f
//           + (q0/2) E.v f + Gamma(f, f)
// with the force and quadratic terms dropped in linearized mode, plus the
// Maxwell part. Switches in the config turn transport, fields and
// collisions off individually.
StateRate rhs_full(const PhaseState& s, const Context& ctx);

struct StepStats {
    // 2 <L ybar_k, ybar_k> per spatial mode for the collision substep, with
    // the quadrature weight, so that sum_k |f_k|^2 drops by dt times its sum.
    std::vector<double> mode_dissipation;
};

// Strang splitting T(dt/2) F(dt/2) C(dt) F(dt/2) T(dt/2): T exact spectral
// transport, F explicit midpoint on the field/force/quadratic terms, C
// Crank-Nicolson on -L.
class Stepper {
public:
    // The collision backend is chosen from config.solver; `automatic` picks
    // the reduced propagator when the initial state is invariant under the
    // reduced symmetry (1-D x along the first axis, longitudinal fields),
    // the dense one for n_v <= 12 and CG otherwise.
    Stepper(std::shared_ptr<const Context> ctx, const PhaseState& initial);

    void step(PhaseState& s);

    void transport(PhaseState& s, double tau) const;
    void field_force(PhaseState& s, double tau) const;
    void collide(PhaseState& s);

    const StepStats& last() const { return stats_; }
    std::string backend() const { return prop_ ? prop_->name() : "none"; }
    const Context& context() const { return *ctx_; }

private:
    struct FieldForceRate {
        DistributionPair df;
        FieldRate fields;
    };
    FieldForceRate field_force_rate(const PhaseState& s) const;
    void linear_field_force(PhaseState& s, double tau) const;

    std::shared_ptr<const Context> ctx_;
    std::unique_ptr<CollisionPropagator> prop_;
    StepStats stats_;
    std::array<double, 9> vv_{};  // <v_i v_j mu>
};

// Backend `automatic` resolves to for this state.
CollisionSolver resolve_solver(const Context& ctx, const PhaseState& initial);

}  // namespace vml
