#pragma once

#include <string>
#include <vector>

#include "vml/evolve/config.hpp"

namespace vml {

// default-linearized  broadband perturbation on the default 1-D torus
// small-broadband     same data on a smaller grid for quick runs
// relaxation          x-homogeneous micro data, collisions only
// vacuum-maxwell      decoupled plane wave, Maxwell only
// nonlinear           small-grid nonlinear run
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace vml
