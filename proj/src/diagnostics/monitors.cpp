#include "vml/diagnostics/monitors.hpp"

#include <algorithm>
#include <cmath>

#include "vml/diagnostics/functionals.hpp"
#include "vml/error.hpp"

namespace vml {

std::vector<double> mode_totals(const PhaseState& s, const Context& ctx) {
    const std::size_t X = ctx.sgrid().size(), N = ctx.vgrid().size();
    const double h3 = ctx.vgrid().weight();
    std::vector<double> out(X, 0.0);
    for (std::size_t m = 0; m < X; ++m) {
        double acc = 0.0;
        for (int sp = 0; sp < 2; ++sp) {
            const auto b = s.f.block(sp, m);
            for (std::size_t p = 0; p < N; ++p) acc += std::norm(b[p]);
        }
        double em = 0.0;
        for (int c = 0; c < 3; ++c) em += std::norm(s.em.E[c][m]) + std::norm(s.em.B[c][m]);
        out[m] = h3 * acc + em;
    }
    return out;
}

double weighted_total(const SpatialGrid& g, const std::vector<double>& v, int lo, int hi) {
    double acc = 0.0;
    for (std::size_t m = 0; m < v.size(); ++m) acc += derivative_weight(g.wavevector(m), lo, hi) * v[m];
    return acc;
}

LyapunovSeries lyapunov_monitor(const std::vector<double>& t, const std::vector<double>& E,
                                const std::vector<double>& D, double factor) {
    if (t.size() != E.size() || t.size() < 2 || D.size() + 1 < t.size())
        throw ShapeError("lyapunov_monitor needs >= 2 states and one dissipation value per step");
    LyapunovSeries out;
    for (std::size_t n = 0; n + 1 < t.size(); ++n) {
        const double dt = t[n + 1] - t[n];
        if (!(dt > 0.0)) throw DomainError("lyapunov_monitor needs increasing times");
        const double delta = (E[n + 1] - E[n]) / dt + D[n];
        const double allow = factor * dt * dt * E[n];
        out.delta.push_back(delta);
        out.allowance.push_back(allow);
        if (delta > allow) ++out.flags;
        if (allow > 0.0) out.worst_ratio = std::max(out.worst_ratio, delta / allow);
    }
    return out;
}

LyapunovTracker::LyapunovTracker(std::vector<std::pair<int, int>> ranges, double factor)
    : ranges_(std::move(ranges)),
      factor_(factor),
      flags_(ranges_.size(), 0),
      last_(ranges_.size(), 0.0),
      worst_(ranges_.size(), -INFINITY) {}

void LyapunovTracker::observe(const SpatialGrid& g, const std::vector<double>& e0, const std::vector<double>& e1,
                              const std::vector<double>& diss, double dt) {
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        const auto [lo, hi] = ranges_[i];
        const double E0 = weighted_total(g, e0, lo, hi);
        const double E1 = weighted_total(g, e1, lo, hi);
        const double D = weighted_total(g, diss, lo, hi);
        const auto s = lyapunov_monitor({0.0, dt}, {E0, E1}, {D}, factor_);
        flags_[i] += s.flags;
        last_[i] = s.delta[0];
        if (s.allowance[0] > 0.0) worst_[i] = std::max(worst_[i], s.delta[0] / s.allowance[0]);
    }
    ++steps_;
}

long LyapunovTracker::total_flags() const {
    long acc = 0;
    for (long f : flags_) acc += f;
    return acc;
}

std::vector<double> LyapunovTracker::save() const {
    std::vector<double> v{static_cast<double>(steps_)};
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        v.push_back(static_cast<double>(flags_[i]));
        v.push_back(last_[i]);
        v.push_back(worst_[i]);
    }
    return v;
}

void LyapunovTracker::restore(const std::vector<double>& v) {
    if (v.size() != 1 + 3 * ranges_.size()) throw IoError("Lyapunov monitor history has the wrong size");
    steps_ = static_cast<long>(v[0]);
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        flags_[i] = static_cast<long>(v[1 + 3 * i]);
        last_[i] = v[2 + 3 * i];
        worst_[i] = v[3 + 3 * i];
    }
}

double interpolation_ratio(double E, double D, double cap, int k, double s) {
    const double theta = (k + s) / (k + s + 1.0);
    if (E == 0.0) return 0.0;
    const double den = std::pow(D, theta) * std::pow(cap, 1.0 - theta);
    return den > 0.0 ? E / den : INFINITY;
}

std::vector<double> interpolation_monitor(const std::vector<double>& E, const std::vector<double>& D,
                                          const std::vector<double>& cap, int k, double s) {
    if (E.size() != D.size() || E.size() != cap.size()) throw ShapeError("interpolation_monitor series differ in length");
    std::vector<double> out;
    double sup = 0.0;
    for (std::size_t i = 0; i < E.size(); ++i) {
        sup = std::max(sup, cap[i]);
        out.push_back(interpolation_ratio(E[i], D[i], sup, k, s));
    }
    return out;
}

double x_term(double t, double ebar_top, double e_n, double e_nl, double eps0) {
    return ebar_top + e_n + std::pow(1.0 + t, -0.5 * (1.0 + eps0)) * e_nl;
}

std::vector<double> x_functional(const std::vector<double>& t, const std::vector<double>& ebar_top,
                                 const std::vector<double>& e_n, const std::vector<double>& e_nl, double eps0) {
    if (t.size() != ebar_top.size() || t.size() != e_n.size() || t.size() != e_nl.size())
        throw ShapeError("x_functional series differ in length");
    std::vector<double> out;
    double sup = -INFINITY;
    for (std::size_t i = 0; i < t.size(); ++i) {
        sup = std::max(sup, x_term(t[i], ebar_top[i], e_n[i], e_nl[i], eps0));
        out.push_back(sup);
    }
    return out;
}

}  // namespace vml
