#include "vml/evolve/config.hpp"

#include <cmath>

#include "vml/error.hpp"

namespace vml {

std::string to_string(Mode m) { return m == Mode::linearized ? "linearized" : "nonlinear"; }

std::string to_string(CollisionSolver s) {
    switch (s) {
        case CollisionSolver::automatic: return "auto";
        case CollisionSolver::reduced: return "reduced";
        case CollisionSolver::dense: return "dense";
        case CollisionSolver::cg: return "cg";
    }
    return "auto";
}

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::zero: return "zero";
        case InitialKind::broadband: return "broadband";
        case InitialKind::homogeneous: return "homogeneous";
        case InitialKind::vacuum_wave: return "vacuum-wave";
        case InitialKind::single_mode: return "single-mode";
    }
    return "zero";
}

Mode parse_mode(const std::string& s) {
    if (s == "linearized") return Mode::linearized;
    if (s == "nonlinear") return Mode::nonlinear;
    throw ConfigError("unknown mode '" + s + "' (expected linearized or nonlinear)");
}

CollisionSolver parse_solver(const std::string& s) {
    if (s == "auto") return CollisionSolver::automatic;
    if (s == "reduced") return CollisionSolver::reduced;
    if (s == "dense") return CollisionSolver::dense;
    if (s == "cg") return CollisionSolver::cg;
    throw ConfigError("unknown collision solver '" + s + "' (expected auto, reduced, dense or cg)");
}

InitialKind parse_initial(const std::string& s) {
    for (InitialKind k : {InitialKind::zero, InitialKind::broadband, InitialKind::homogeneous,
                          InitialKind::vacuum_wave, InitialKind::single_mode})
        if (to_string(k) == s) return k;
    throw ConfigError("unknown initial data '" + s + "'");
}

int RunConfig::steps() const { return static_cast<int>(std::llround(t_end / dt)); }

void RunConfig::validate() const {
    if (n_v < 8) throw ConfigError("n_v must be at least 8");
    if (n_v % 2 != 0) throw ConfigError("n_v must be even");
    if (!(v_max > 0.0)) throw ConfigError("v_max must be positive");
    if (n_x < 1) throw ConfigError("n_x must be positive");
    if (!(box_length > 0.0)) throw ConfigError("box_length must be positive");
    try {
        weight.validate(s);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
    if (std::abs(t_end / dt - std::round(t_end / dt)) > 1e-9 * std::max(1.0, t_end / dt))
        throw ConfigError("t_end must be a whole number of steps");
    if (!(amplitude >= 0.0)) throw ConfigError("amplitude must be nonnegative");
    if (modes < 1) throw ConfigError("modes must be positive");
    if (mode_index < 0) throw ConfigError("mode_index must be nonnegative");
    if (!(cg_tol > 0.0)) throw ConfigError("cg_tol must be positive");
    if (cg_max_iter < 1) throw ConfigError("cg_max_iter must be positive");
    const int n0_min = s <= 1.0 ? 4 : 3;
    if (N0 < n0_min) throw ConfigError("N0 must be at least " + std::to_string(n0_min) + " for this s");
    if (N < N0) throw ConfigError("N must be at least N0");
    if (weight.ell < N) throw ConfigError("the weight order l must satisfy l >= N");
    const double l0_min = weight.ell + (weight.gamma - 2.0) / (2.0 * (weight.gamma + 2.0));
    if (l0 < l0_min - 1e-12) throw ConfigError("l0 must be at least l + (gamma-2)/(2(gamma+2))");
    if (l_prime < 0.0) throw ConfigError("l_prime must be nonnegative");
    if (!(eps0 > 0.0 && eps0 < 1.0)) throw ConfigError("eps0 must lie in (0, 1)");
    if (beta_max < 0 || beta_max > 4) throw ConfigError("beta_max must lie in [0, 4]");
    if (output_every < 1) throw ConfigError("output_every must be positive");
    if (!(lyapunov_factor >= 0.0)) throw ConfigError("lyapunov_factor must be nonnegative");
    if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be nonnegative");
}

}  // namespace vml
