#pragma once

#include <utility>
#include <vector>

#include "vml/evolve/state.hpp"

namespace vml {

// |f_k|^2 + |E_k|^2 + |B_k|^2 per spatial mode (all modes, quadrature weight
// included).
std::vector<double> mode_totals(const PhaseState& s, const Context& ctx);

// sum_m W(kappa_m; lo, hi) v_m with W the derivative weight.
double weighted_total(const SpatialGrid& g, const std::vector<double>& v, int lo, int hi);

// Per-step Lyapunov deltas  (E_{n+1} - E_n) / dt_n + D_n  and flags where a
// delta exceeds factor * dt_n^2 * E_n.
struct LyapunovSeries {
    std::vector<double> delta;
    std::vector<double> allowance;
    long flags = 0;
    double worst_ratio = 0.0;  // max delta / allowance over steps with allowance > 0
};
LyapunovSeries lyapunov_monitor(const std::vector<double>& t, const std::vector<double>& E,
                                const std::vector<double>& D, double factor);

// Streaming form used during a run: one tracked functional per derivative
// range [lo, hi] (E_N and E^k_{N0}).
class LyapunovTracker {
public:
    LyapunovTracker(std::vector<std::pair<int, int>> ranges, double factor);

    // e0, e1: mode totals before and after a step; diss: per-mode collision
    // dissipation of the step.
    void observe(const SpatialGrid& g, const std::vector<double>& e0, const std::vector<double>& e1,
                 const std::vector<double>& diss, double dt);

    std::size_t size() const { return ranges_.size(); }
    long flags(std::size_t i) const { return flags_[i]; }
    long total_flags() const;
    // Most recent delta, per range.
    double last_delta(std::size_t i) const { return last_[i]; }
    double worst_ratio(std::size_t i) const { return worst_[i]; }
    long steps() const { return steps_; }

    std::vector<double> save() const;
    void restore(const std::vector<double>& v);

private:
    std::vector<std::pair<int, int>> ranges_;
    double factor_;
    std::vector<long> flags_;
    std::vector<double> last_, worst_;
    long steps_ = 0;
};

// r = E / (D^theta cap^{1-theta}), theta = (k+s)/(k+s+1).
double interpolation_ratio(double E, double D, double cap, int k, double s);
// Series of r with cap replaced by its running supremum.
std::vector<double> interpolation_monitor(const std::vector<double>& E, const std::vector<double>& D,
                                          const std::vector<double>& cap, int k, double s);

// One term of X: Ebar_top + E_N + (1+t)^{-(1+eps0)/2} E_{N,l}.
double x_term(double t, double ebar_top, double e_n, double e_nl, double eps0);
// Running supremum of x_term.
std::vector<double> x_functional(const std::vector<double>& t, const std::vector<double>& ebar_top,
                                 const std::vector<double>& e_n, const std::vector<double>& e_nl, double eps0);

}  // namespace vml
