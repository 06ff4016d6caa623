#include "vml/landau/sigma_norm.hpp"

#include <cmath>

#include "vml/error.hpp"
#include "vml/landau/operator.hpp"

namespace vml {

std::vector<double> weight_field(const VelocityGrid& grid, const WeightParams& p, double ell_order, double t) {
    std::vector<double> w(grid.size());
    for (std::size_t q = 0; q < grid.size(); ++q) w[q] = weight_w(p, ell_order, t, grid.node(q));
    return w;
}

std::array<double, 3> sigma_norm2_parts(std::span<const double> f, const CollisionTables& t,
                                        std::span<const double> w) {
    const std::size_t N = t.size();
    if (f.size() != N) throw ShapeError("velocity field does not match collision tables");
    if (!w.empty() && w.size() != N) throw ShapeError("weight field does not match collision tables");
    std::vector<double> g(3 * N);
    folded_gradient(f, t, g);
    const auto jap = t.grid().japanese();
    const auto jg2 = t.jap_gamma2();
    const auto v2 = t.grid().speed2();
    const double gamma = t.gamma();
    double zeroth = 0.0, par = 0.0, trans = 0.0;
    for (std::size_t p = 0; p < N; ++p) {
        const double ww = w.empty() ? 1.0 : w[p] * w[p];
        const double gx = g[p], gy = g[N + p], gz = g[2 * N + p];
        const double g2 = gx * gx + gy * gy + gz * gz;
        zeroth += ww * jg2[p] * f[p] * f[p];
        if (v2[p] == 0.0) {
            trans += ww * jg2[p] * g2;
            continue;
        }
        const auto vx = t.grid().v(0)[p], vy = t.grid().v(1)[p], vz = t.grid().v(2)[p];
        const double gp = (gx * vx + gy * vy + gz * vz) / std::sqrt(v2[p]);
        par += ww * std::pow(jap[p], gamma) * gp * gp;
        trans += ww * jg2[p] * std::max(0.0, g2 - gp * gp);
    }
    const double h3 = t.grid().weight();
    return {zeroth * h3, par * h3, trans * h3};
}

double sigma_norm2(std::span<const double> f, const CollisionTables& t, std::span<const double> w) {
    const auto parts = sigma_norm2_parts(f, t, w);
    return parts[0] + parts[1] + parts[2];
}

double sigma_norm(std::span<const double> f, const CollisionTables& t, const SigmaNormSpec& spec) {
    if (!spec.weighted) return std::sqrt(sigma_norm2(f, t));
    const auto w = weight_field(t.grid(), spec.weight, spec.ell_order, spec.t);
    return std::sqrt(sigma_norm2(f, t, w));
}

double sigma_norm2(const VelocityPair& f, const CollisionTables& t, std::span<const double> w) {
    return sigma_norm2(f.plus, t, w) + sigma_norm2(f.minus, t, w);
}

}  // namespace vml
