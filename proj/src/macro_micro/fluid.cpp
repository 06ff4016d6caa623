#include "vml/macro_micro/fluid.hpp"

#include <algorithm>
#include <cmath>

#include "vml/error.hpp"
#include "vml/macro_micro/moments.hpp"

namespace vml {

namespace {

// Weights of the three-point derivative at node `at` (0, 1 or 2) of t0<t1<t2.
std::array<double, 3> diff_weights(double t0, double t1, double t2, int at) {
    const double x = at == 0 ? t0 : (at == 1 ? t1 : t2);
    return {((x - t1) + (x - t2)) / ((t0 - t1) * (t0 - t2)), ((x - t0) + (x - t2)) / ((t1 - t0) * (t1 - t2)),
            ((x - t0) + (x - t1)) / ((t2 - t0) * (t2 - t1))};
}

cplx divergence(const std::array<std::vector<cplx>, 3>& u, const SpatialGrid& grid, std::size_t m) {
    const auto k = grid.wavevector(m);
    return cplx(0.0, 1.0) * (k[0] * u[0][m] + k[1] * u[1][m] + k[2] * u[2][m]);
}

}  // namespace

MacroSnapshot macro_snapshot(const DistributionPair& f, const Projection& proj, double t) {
    const MacroFields mf = macro_fields(f, proj);
    MacroSnapshot s;
    s.t = t;
    s.a_plus = mf.a_plus;
    s.a_minus = mf.a_minus;
    s.b = mf.b;
    s.G = moments(f, proj).G;
    return s;
}

FluidResiduals fluid_residuals(const std::vector<MacroSnapshot>& history, const SpatialGrid& grid) {
    if (history.size() < 3) throw DomainError("fluid residuals need at least 3 saved states");
    const std::size_t n = history.size();
    for (const auto& s : history)
        if (s.a_plus.size() != grid.size()) throw ShapeError("snapshot does not match spatial grid");
    for (std::size_t i = 1; i < n; ++i)
        if (!(history[i].t > history[i - 1].t)) throw DomainError("snapshot times must increase");

    FluidResiduals out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t base = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
        const int at = static_cast<int>(i - base);
        const auto w = diff_weights(history[base].t, history[base + 1].t, history[base + 2].t, at);
        double cont = 0.0, chg = 0.0;
        for (std::size_t m = 0; m < grid.size(); ++m) {
            cplx dsum(0.0), ddiff(0.0);
            for (int r = 0; r < 3; ++r) {
                const auto& s = history[base + r];
                dsum += w[r] * 0.5 * (s.a_plus[m] + s.a_minus[m]);
                ddiff += w[r] * (s.a_plus[m] - s.a_minus[m]);
            }
            cont += std::norm(dsum + divergence(history[i].b, grid, m));
            chg += std::norm(ddiff + divergence(history[i].G, grid, m));
        }
        out.t.push_back(history[i].t);
        out.continuity.push_back(std::sqrt(cont));
        out.charge.push_back(std::sqrt(chg));
    }
    out.max_continuity = *std::max_element(out.continuity.begin(), out.continuity.end());
    out.max_charge = *std::max_element(out.charge.begin(), out.charge.end());
    return out;
}

}  // namespace vml
