#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "vml/phase_grid/weight.hpp"

namespace vml {

enum class Mode { linearized, nonlinear };
enum class CollisionSolver { automatic, reduced, dense, cg };
enum class InitialKind { zero, broadband, homogeneous, vacuum_wave, single_mode };

std::string to_string(Mode m);
std::string to_string(CollisionSolver s);
std::string to_string(InitialKind k);
Mode parse_mode(const std::string& s);
CollisionSolver parse_solver(const std::string& s);
InitialKind parse_initial(const std::string& s);

struct RunConfig {
    // grids
    int n_v = 16;
    double v_max = 6.0;
    int n_x = 64;
    double box_length = 200.0 * 3.14159265358979323846;
    std::array<bool, 3> active{true, false, false};

    // physics
    WeightParams weight{-3.0, 7.0, 0.01, 0.25};
    double s = 0.5;
    Mode mode = Mode::linearized;
    bool transport = true;
    bool fields = true;
    bool coupling = true;  // current in Maxwell and E.v mu^{1/2} source in f
    bool collisions = true;

    // initial data
    InitialKind initial = InitialKind::broadband;
    double amplitude = 1e-3;
    int modes = 16;
    int mode_index = 1;
    std::uint64_t seed = 1;

    // integrator
    double dt = 0.25;
    double t_end = 500.0;
    CollisionSolver solver = CollisionSolver::automatic;
    double cg_tol = 1e-10;
    int cg_max_iter = 500;

    // diagnostics
    int N0 = 4;
    int N = 7;
    double l0 = 9.5;
    double l_prime = 0.0;
    double eps0 = 0.1;
    int beta_max = 2;
    int output_every = 8;
    double lyapunov_factor = 10.0;

    // output
    int checkpoint_every = 0;

    // l* = l' + (N0 - 1)/2
    double l_star() const { return l_prime + 0.5 * (N0 - 1); }
    double l() const { return weight.ell; }
    int steps() const;

    // Throws ConfigError describing the first violated constraint.
    void validate() const;
};

}  // namespace vml
