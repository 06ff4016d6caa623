#include "vml/evolve/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vml/error.hpp"
#include "vml/landau/coercivity.hpp"

namespace vml {

namespace {

int first_active(const SpatialGrid& g) {
    for (int a = 0; a < 3; ++a)
        if (g.active(a)) return a;
    return -1;
}

// Physical field sum_k cos(kappa_k x + phase_k) / sqrt(modes) on the first
// active axis, returned spectrally.
std::vector<cplx> random_profile(const SpatialGrid& g, int modes, std::mt19937_64& rng) {
    const int axis = first_active(g);
    std::vector<double> u(g.size(), 0.0);
    if (axis < 0) return g.forward(u);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const int kmax = std::min(modes, g.n_x() / 2 - 1);
    for (int k = 1; k <= kmax; ++k) {
        const double ph = phase(rng);
        const double kappa = 2.0 * std::numbers::pi * k / g.box_length();
        for (std::size_t m = 0; m < g.size(); ++m)
            u[m] += std::cos(kappa * g.position(m)[axis] + ph) / std::sqrt(static_cast<double>(kmax));
    }
    return g.forward(u);
}

std::vector<cplx> cosine_mode(const SpatialGrid& g, int k) {
    const int axis = first_active(g);
    std::vector<double> u(g.size(), 0.0);
    if (axis >= 0) {
        const double kappa = 2.0 * std::numbers::pi * k / g.box_length();
        for (std::size_t m = 0; m < g.size(); ++m) u[m] = std::cos(kappa * g.position(m)[axis]);
    }
    return g.forward(u);
}

void add_macro(PhaseState& st, const Context& ctx, const MacroFields& mf) {
    for (std::size_t m = 0; m < mf.size(); ++m) {
        MacroCoefficients<cplx> c;
        c.a_plus = mf.a_plus[m];
        c.a_minus = mf.a_minus[m];
        c.c = mf.c[m];
        for (int i = 0; i < 3; ++i) c.b[i] = mf.b[i][m];
        ctx.projection->reconstruct(c, st.f.block(0, m), st.f.block(1, m));
    }
}

}  // namespace

PhaseState make_initial_state(const Context& ctx) {
    const RunConfig& cfg = ctx.config;
    const SpatialGrid& g = ctx.sgrid();
    PhaseState st(ctx);
    const double A = cfg.amplitude;
    std::mt19937_64 rng(cfg.seed);

    switch (cfg.initial) {
        case InitialKind::zero: break;
        case InitialKind::broadband: {
            MacroFields mf(g.size());
            auto scaled = [&](std::vector<cplx> u) {
                for (auto& z : u) z *= A;
                return u;
            };
            mf.a_plus = scaled(random_profile(g, cfg.modes, rng));
            mf.a_minus = scaled(random_profile(g, cfg.modes, rng));
            mf.b[0] = scaled(random_profile(g, cfg.modes, rng));
            mf.c = scaled(random_profile(g, cfg.modes, rng));
            add_macro(st, ctx, mf);
            break;
        }
        case InitialKind::homogeneous: {
            const VelocityPair sample = random_hermite_pair(ctx.vgrid(), rng());
            const VelocityPair micro = ctx.projection->micro(sample);
            // k = 0 coefficient of a constant field u is u * sqrt(volume).
            const double scale = A * std::sqrt(g.volume());
            for (std::size_t p = 0; p < ctx.vgrid().size(); ++p) {
                st.f.block(0, 0)[p] = scale * micro.plus[p];
                st.f.block(1, 0)[p] = scale * micro.minus[p];
            }
            break;
        }
        case InitialKind::vacuum_wave: {
            auto u = cosine_mode(g, cfg.mode_index);
            for (std::size_t m = 0; m < g.size(); ++m) {
                st.em.E[1][m] = A * u[m];
                st.em.B[2][m] = A * u[m];
            }
            break;
        }
        case InitialKind::single_mode: {
            MacroFields mf(g.size());
            const auto u = cosine_mode(g, cfg.mode_index);
            for (std::size_t m = 0; m < g.size(); ++m) {
                mf.a_plus[m] = 0.5 * A * u[m];
                mf.a_minus[m] = -0.5 * A * u[m];
                mf.b[0][m] = A * u[m];
            }
            add_macro(st, ctx, mf);
            break;
        }
    }
    st.em = make_compatible(st.em, st.f, g, ctx.vgrid());
    return st;
}

}  // namespace vml
