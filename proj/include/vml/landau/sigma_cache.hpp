#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vml/landau/tables.hpp"

namespace vml {

// Binary cache of the sigma table. Layout: a 64-byte descriptor
//   0  char[8]  "VMLSIGMA"
//   8  u32      format version
//   12 u32      n_v
//   16 f64      gamma
//   24 f64      v_max
//   32 u64      component count (6)
//   40 u64      values per component (n_v^3)
//   48 u8[16]   zero
// followed by little-endian f64 values, component-major.
inline constexpr unsigned kSigmaCacheVersion = 1;

// File name keyed by (n_v, v_max, gamma).
std::string sigma_cache_name(int n_v, double v_max, double gamma);

void save_sigma_cache(const std::string& path, const CollisionTables& tables);

// Empty when the file is missing or keyed to a different (gamma, n_v, v_max).
// Throws IoError on a corrupt or truncated file.
std::optional<std::vector<double>> load_sigma_cache(const std::string& path, const VelocityGrid& grid, double gamma);

}  // namespace vml
