#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vml/evolve/state.hpp"

namespace vml {

// Checkpoint layout: a 64-byte descriptor
//   0  char[8]  "VMLCKPT1"
//   8  u32      format version
//   12 u32      reserved (0)
//   16 u64      spatial points
//   24 u64      velocity points
//   32 f64      t
//   40 u64      step index
//   48 f64      running supremum of X(t)
//   56 u64      reserved (0)
// followed by little-endian f64 payload: f as (re, im) pairs in [s][x][v]
// order, then E and B as (re, im) per component and mode, then a u64 count
// and that many f64 values of monitor history (running suprema, counters).
inline constexpr unsigned kCheckpointVersion = 1;

struct Checkpoint {
    PhaseState state;
    std::uint64_t step = 0;
    double x_sup = 0.0;
    std::vector<double> monitor;
};

void save_checkpoint(const std::string& path, const PhaseState& s, std::uint64_t step, double x_sup,
                     const std::vector<double>& monitor = {});

// Throws IoError on a missing, corrupt or mismatched file.
Checkpoint load_checkpoint(const std::string& path, const Context& ctx);

}  // namespace vml
