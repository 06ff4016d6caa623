#pragma once

#include "vml/evolve/state.hpp"

namespace vml {

// Initial state for config.initial, scaled by config.amplitude:
//   zero         everything zero
//   broadband    macroscopic a+, a-, b1, c with equal-amplitude random-phase
//                modes k = 1..modes along the first active axis
//   homogeneous  x-independent random microscopic pair (Hermite sample)
//   vacuum-wave  f = 0, transverse plane wave E2 = B3 in mode mode_index
//   single-mode  macroscopic a+ - a- and b1 in one mode
// E is made Gauss-compatible and B divergence-free.
PhaseState make_initial_state(const Context& ctx);

}  // namespace vml
