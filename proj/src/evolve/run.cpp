#include "vml/evolve/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vml/diagnostics/monitors.hpp"
#include "vml/evolve/checkpoint.hpp"
#include "vml/evolve/initial_data.hpp"
#include "vml/evolve/stepper.hpp"

namespace vml {

long LyapunovSummary::total_flags() const {
    long acc = 0;
    for (long f : flags) acc += f;
    return acc;
}

namespace {

std::string checkpoint_name(const std::string& dir, long step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "ckpt_%08ld.bin", step);
    return (std::filesystem::path(dir) / buf).string();
}

}  // namespace

RunResult run(const RunConfig& config, const RunOptions& opt) { return run(make_context(config, opt.cache_dir), opt); }

RunResult run(std::shared_ptr<const Context> ctx, const RunOptions& opt) {
    const RunConfig& c = ctx->config;
    const SpatialGrid& sg = ctx->sgrid();
    const long steps = c.steps();

    PhaseState initial = make_initial_state(*ctx);
    Stepper stepper(ctx, initial);

    LyapunovTracker tracker({{0, c.N}, {0, c.N0}, {1, c.N0}, {2, c.N0}}, c.lyapunov_factor);
    std::array<double, 3> cap_sup{0.0, 0.0, 0.0};
    double x_sup = -INFINITY;

    PhaseState s = initial;
    long start = 0;
    if (!opt.resume.empty()) {
        Checkpoint ck = load_checkpoint(opt.resume, *ctx);
        s = std::move(ck.state);
        start = static_cast<long>(ck.step);
        x_sup = ck.x_sup;
        if (ck.monitor.size() < 3) throw IoError("checkpoint monitor history is incomplete: " + opt.resume);
        for (int k = 0; k < 3; ++k) cap_sup[k] = ck.monitor[k];
        tracker.restore(std::vector<double>(ck.monitor.begin() + 3, ck.monitor.end()));
    }
    if (!opt.checkpoint_dir.empty()) std::filesystem::create_directories(opt.checkpoint_dir);

    RunResult result;
    result.backend = stepper.backend();

    auto monitor_history = [&] {
        std::vector<double> v(cap_sup.begin(), cap_sup.end());
        const auto t = tracker.save();
        v.insert(v.end(), t.begin(), t.end());
        return v;
    };

    auto emit = [&](long n) {
        FunctionalReport r = compute_report(s, *ctx, n);
        x_sup = std::max(x_sup, x_term(r.t, r.Ebar_top, r.E_N, r.E_Nl, c.eps0));
        r.X = x_sup;
        for (int k = 0; k < 3; ++k) {
            cap_sup[k] = std::max(cap_sup[k], r.cap[k]);
            r.interp[k] = interpolation_ratio(r.E_k[k], r.D_k[k], cap_sup[k], k, c.s);
        }
        r.lyapunov_delta = tracker.steps() > 0 ? tracker.last_delta(0) : 0.0;
        r.lyapunov_flags = tracker.total_flags();
        if (opt.on_report) opt.on_report(r);
        if (opt.keep_reports) result.reports.push_back(r);
    };

    if (opt.on_step && start == 0) opt.on_step(s, 0);
    if (start == 0 || start % c.output_every == 0) emit(start);

    std::vector<double> e0 = mode_totals(s, *ctx);
    PhaseState prev;
    for (long n = start + 1; n <= steps; ++n) {
        prev = s;
        stepper.step(s);
        s.t = static_cast<double>(n) * c.dt;
        if (!s.all_finite()) {
            if (!opt.checkpoint_dir.empty())
                save_checkpoint((std::filesystem::path(opt.checkpoint_dir) / "last_good.bin").string(), prev,
                                static_cast<std::uint64_t>(n - 1), x_sup, monitor_history());
            throw NonFiniteState("non-finite state at step " + std::to_string(n), prev, n - 1);
        }
        std::vector<double> e1 = mode_totals(s, *ctx);
        tracker.observe(sg, e0, e1, stepper.last().mode_dissipation, c.dt);
        e0 = std::move(e1);
        if (opt.on_step) opt.on_step(s, n);
        if (n % c.output_every == 0 || n == steps) emit(n);
        if (c.checkpoint_every > 0 && !opt.checkpoint_dir.empty() && n % c.checkpoint_every == 0)
            save_checkpoint(checkpoint_name(opt.checkpoint_dir, n), s, static_cast<std::uint64_t>(n), x_sup,
                            monitor_history());
    }

    result.final_state = std::move(s);
    result.steps = steps;
    result.x_sup = x_sup;
    const char* names[] = {"E_N", "E^0", "E^1", "E^2"};
    for (std::size_t i = 0; i < tracker.size(); ++i) {
        result.lyapunov.names.push_back(names[i]);
        result.lyapunov.flags.push_back(tracker.flags(i));
        result.lyapunov.worst_ratio.push_back(tracker.worst_ratio(i));
    }
    result.lyapunov.steps = tracker.steps();
    return result;
}

}  // namespace vml
