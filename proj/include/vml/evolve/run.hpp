#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vml/diagnostics/functionals.hpp"
#include "vml/error.hpp"
#include "vml/evolve/state.hpp"

namespace vml {

// Thrown when a step produces NaN or Inf. Carries the last finite state;
// run() also writes it to <checkpoint_dir>/last_good.bin when a directory
// is configured.
class NonFiniteState : public NumericalError {
public:
    NonFiniteState(const std::string& msg, PhaseState last_good, long step)
        : NumericalError(msg), last_good_(std::move(last_good)), step_(step) {}
    const PhaseState& last_good() const { return last_good_; }
    long step() const { return step_; }

private:
    PhaseState last_good_;
    long step_;
};

struct RunOptions {
    std::string checkpoint_dir;   // checkpoints and last_good.bin; empty disables them
    std::string resume;           // checkpoint to continue from
    std::string cache_dir;        // sigma table cache
    std::function<void(const FunctionalReport&)> on_report;
    std::function<void(const PhaseState&, long)> on_step;  // after every step, and for step 0
    bool keep_reports = true;
};

struct LyapunovSummary {
    std::vector<std::string> names;   // "E_N", "E^0", "E^1", "E^2"
    std::vector<long> flags;
    std::vector<double> worst_ratio;  // max delta / allowance
    long steps = 0;
    long total_flags() const;
};

struct RunResult {
    PhaseState final_state;
    std::vector<FunctionalReport> reports;
    LyapunovSummary lyapunov;
    std::string backend;
    long steps = 0;
    double x_sup = 0.0;
};

// Integrates config.t_end / config.dt steps, reporting at step 0, every
// output_every steps and at the final step.
RunResult run(std::shared_ptr<const Context> ctx, const RunOptions& opt = {});
RunResult run(const RunConfig& config, const RunOptions& opt = {});

}  // namespace vml
