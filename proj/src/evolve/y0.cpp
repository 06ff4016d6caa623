#include "vml/evolve/y0.hpp"

#include <algorithm>
#include <cmath>

#include "vml/diagnostics/functionals.hpp"

namespace vml {

namespace {

double monomial(const std::array<double, 3>& k, const std::array<int, 3>& a) {
    double p = 1.0;
    for (int i = 0; i < 3; ++i) p *= std::pow(k[i] * k[i], a[i]);
    return p;
}

int order(const std::array<int, 3>& a) { return a[0] + a[1] + a[2]; }

}  // namespace

double y0_functional(const PhaseState& s, const Context& ctx) {
    const RunConfig& c = ctx.config;
    const SpatialGrid& sg = ctx.sgrid();
    const std::size_t X = sg.size();
    const int bmax = std::min(c.beta_max, c.N);
    const auto betas = velocity_multiindices(bmax);
    const auto alphas = velocity_multiindices(c.N);

    std::vector<VelocityRequest> req{{c.l0 + c.l_star(), false, false, false}, {c.l(), false, false, false}};
    const auto per = velocity_sums_per_index(s, ctx, req, bmax);
    const int tops[2] = {c.N0, c.N};

    double y = 0.0;
    for (int r = 0; r < 2; ++r)
        for (std::size_t bi = 0; bi < betas.size(); ++bi) {
            const int nb = order(betas[bi]);
            if (nb > tops[r]) continue;
            for (const auto& a : alphas) {
                if (order(a) + nb > tops[r]) continue;
                double acc = 0.0;
                for (std::size_t m = 0; m < X; ++m) {
                    const double v = per[r][bi][m];
                    if (v != 0.0) acc += monomial(sg.wavevector(m), a) * v;
                }
                y += std::sqrt(acc);
            }
        }

    double hN = 0.0, neg_field = 0.0, neg_f = 0.0;
    const double h3 = ctx.vgrid().weight();
    for (std::size_t m = 0; m < X; ++m) {
        double em = 0.0;
        for (int i = 0; i < 3; ++i) em += std::norm(s.em.E[i][m]) + std::norm(s.em.B[i][m]);
        hN += derivative_weight(sg.wavevector(m), 0, c.N) * em;
        const double kn = sg.wavenumber(m);
        if (kn == 0.0) continue;
        const double sym = std::pow(kn, -2.0 * c.s);
        neg_field += sym * em;
        double fm = 0.0;
        for (int sp = 0; sp < 2; ++sp)
            for (const cplx& z : s.f.block(sp, m)) fm += std::norm(z);
        neg_f += sym * h3 * fm;
    }
    return y + std::sqrt(hN) + std::sqrt(neg_field) + std::sqrt(neg_f);
}

}  // namespace vml
