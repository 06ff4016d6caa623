#pragma once

#include "vml/evolve/state.hpp"

namespace vml {

// Smallness functional of the initial data
//   sum_{|a|+|b| <= N0} ||w_{l0+l*-|b|} d^a_b f|| + sum_{|a|+|b| <= N} ||w_{l-|b|} d^a_b f||
//   + ||(E, B)||_{H^N} + ||(E, B)||_{H^{-s}} + ||f||_{H^{-s}}
// with individual (unsquared) norms per multi-index pair and |b| <= beta_max.
// Homogeneous of degree one in (f, E, B).
double y0_functional(const PhaseState& s, const Context& ctx);

}  // namespace vml
