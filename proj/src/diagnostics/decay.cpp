#include "vml/diagnostics/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vml/error.hpp"

namespace vml {

const char* const kTorusCaveat =
    "torus caveat: the algebraic rate (1+t)^-(k+s) holds on the whole space; on a periodic box it is only "
    "visible on an intermediate window, after which the slowest nonzero mode decays exponentially";

namespace {

struct Line {
    double slope, intercept, rms;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("decay fit window has no spread in t");
    const double b = sxy / sxx, a = my - b * mx;
    double r2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (a + b * x[i]);
        r2 += r * r;
    }
    return {b, a, std::sqrt(r2 / n)};
}

}  // namespace

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& E, double t0, double t1, int k, double s,
                   double threshold) {
    if (t.size() != E.size()) throw ShapeError("decay_fit: t and E differ in length");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] > t1) continue;
        if (!(E[i] > 0.0) || !std::isfinite(E[i]))
            throw DomainError("decay_fit: nonpositive value " + std::to_string(E[i]) + " at t = " + std::to_string(t[i]));
        if (t[i] <= -1.0) throw DomainError("decay_fit: t must exceed -1");
        x.push_back(std::log1p(t[i]));
        y.push_back(std::log(E[i]));
    }
    if (x.size() < 4) throw DomainError("decay_fit: window holds " + std::to_string(x.size()) + " points, need 4");
    const Line l = fit_line(x, y);
    DecayFit f;
    f.t0 = t0;
    f.t1 = t1;
    f.points = static_cast<int>(x.size());
    f.exponent = l.slope;
    f.intercept = l.intercept;
    f.residual = l.rms;
    f.target = -(k + s);
    f.reliable = l.rms < threshold;
    return f;
}

DecayFit auto_decay_fit(const std::vector<double>& t, const std::vector<double>& E, int k, double s, double min_ratio,
                        int min_points, double threshold) {
    if (t.size() != E.size()) throw ShapeError("auto_decay_fit: t and E differ in length");
    DecayFit best;
    double best_res = std::numeric_limits<double>::infinity();
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(E[i] > 0.0)) continue;
        for (std::size_t j = i + static_cast<std::size_t>(min_points) - 1; j < n; ++j) {
            if ((1.0 + t[j]) < min_ratio * (1.0 + t[i])) continue;
            bool positive = true;
            for (std::size_t q = i; q <= j && positive; ++q) positive = E[q] > 0.0;
            if (!positive) break;
            const DecayFit f = decay_fit(t, E, t[i], t[j], k, s, threshold);
            if (f.residual < best_res) {
                best_res = f.residual;
                best = f;
            }
        }
    }
    if (!std::isfinite(best_res)) throw DomainError("auto_decay_fit: no admissible window");
    return best;
}

double late_exponential_rate(const std::vector<double>& t, const std::vector<double>& E, double fraction) {
    if (t.size() != E.size()) throw ShapeError("late_exponential_rate: t and E differ in length");
    const std::size_t n = t.size();
    const std::size_t m = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(fraction * n)));
    if (m > n) throw DomainError("late_exponential_rate: need at least 4 samples");
    std::vector<double> x, y;
    for (std::size_t i = n - m; i < n; ++i) {
        if (!(E[i] > 0.0)) throw DomainError("late_exponential_rate: nonpositive value");
        x.push_back(t[i]);
        y.push_back(std::log(E[i]));
    }
    return -fit_line(x, y).slope;
}

}  // namespace vml
