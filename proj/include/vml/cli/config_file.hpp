#pragma once

#include <string>
#include <vector>

#include "vml/evolve/config.hpp"

namespace vml {

// Flat key = value text with sections [grids], [physics], [integrator],
// [diagnostics], [output]; '#' starts a comment. Keys may repeat across
// files but not within one. Unknown sections, unknown keys and bad values
// raise ConfigError carrying the line number.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Override "key=value" or "section.key=value".
void apply_override(RunConfig& c, const std::string& assignment);

// Fully resolved config in the input format; parse_config of the result
// reproduces c exactly.
std::string write_manifest(const RunConfig& c);

// "section.key" for every recognised key.
std::vector<std::string> config_keys();

}  // namespace vml
