#include "vml/diagnostics/functionals.hpp"

#include <cmath>

#include "vml/error.hpp"
#include "vml/landau/sigma_norm.hpp"
#include "vml/phase_grid/sobolev.hpp"

namespace vml {

namespace {

AxisOperator zero_extended_difference(int n, double h) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (i > 0) d[static_cast<std::size_t>(i) * n + i - 1] = -0.5 / h;
        if (i + 1 < n) d[static_cast<std::size_t>(i) * n + i + 1] = 0.5 / h;
    }
    return AxisOperator(n, std::move(d));
}

// Half modes with their Hermitian multiplicity.
std::vector<std::pair<std::size_t, double>> weighted_modes(const SpatialGrid& g) {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t m : g.half_modes()) out.emplace_back(m, g.conjugate(m) == m ? 1.0 : 2.0);
    return out;
}

void require_fourier(const PhaseState& s) {
    if (s.f.space() != Space::fourier) throw DomainError("functionals need f in Fourier-x representation");
}

// d_beta u with the zero-extended difference.
void derivative(const AxisOperator& D, const std::array<int, 3>& beta, const std::vector<double>& u,
                std::vector<double>& out, std::vector<double>& tmp) {
    out = u;
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < beta[c]; ++r) {
            D.apply(out.data(), tmp.data(), c);
            std::swap(out, tmp);
        }
}

double symbol(const std::array<double, 3>& k, int j) { return multiindex_symbol(k, j); }

}  // namespace

double derivative_weight(const std::array<double, 3>& kappa, int lo, int hi) {
    double acc = 0.0;
    for (int j = std::max(lo, 0); j <= hi; ++j) acc += symbol(kappa, j);
    return acc;
}

std::vector<std::array<int, 3>> velocity_multiindices(int beta_max) {
    std::vector<std::array<int, 3>> out;
    for (int b = 0; b <= beta_max; ++b)
        for (int i = b; i >= 0; --i)
            for (int j = b - i; j >= 0; --j) out.push_back({i, j, b - i - j});
    return out;
}

ModeEnergies mode_energies(const PhaseState& s, const Context& ctx) {
    require_fourier(s);
    const SpatialGrid& sg = ctx.sgrid();
    const VelocityGrid& g = ctx.vgrid();
    const std::size_t X = sg.size(), N = g.size();
    const double h3 = g.weight();
    ModeEnergies e;
    for (auto* v : {&e.f, &e.E, &e.B, &e.Pf, &e.micro_sigma, &e.charge, &e.macro}) v->assign(X, 0.0);
    std::vector<cplx> pp(N), pm(N);
    std::vector<double> re(N), im(N);
    for (const auto& [m, mult] : weighted_modes(sg)) {
        const auto fp = s.f.block(0, m), fm = s.f.block(1, m);
        double acc = 0.0;
        for (std::size_t p = 0; p < N; ++p) acc += std::norm(fp[p]) + std::norm(fm[p]);
        e.f[m] = mult * h3 * acc;
        double eE = 0.0, eB = 0.0;
        for (int c = 0; c < 3; ++c) {
            eE += std::norm(s.em.E[c][m]);
            eB += std::norm(s.em.B[c][m]);
        }
        e.E[m] = mult * eE;
        e.B[m] = mult * eB;

        const auto coef = ctx.projection->coefficients(fp, fm);
        ctx.projection->reconstruct(coef, pp, pm);
        acc = 0.0;
        for (std::size_t p = 0; p < N; ++p) acc += std::norm(pp[p]) + std::norm(pm[p]);
        e.Pf[m] = mult * h3 * acc;
        e.charge[m] = mult * std::norm(coef.a_plus - coef.a_minus);
        e.macro[m] = mult * (std::norm(coef.a_plus) + std::norm(coef.a_minus) + std::norm(coef.b[0]) +
                             std::norm(coef.b[1]) + std::norm(coef.b[2]) + std::norm(coef.c));
        double sig = 0.0;
        for (int sp = 0; sp < 2; ++sp) {
            const auto src = sp == 0 ? fp : fm;
            const auto& proj = sp == 0 ? pp : pm;
            for (std::size_t p = 0; p < N; ++p) {
                re[p] = src[p].real() - proj[p].real();
                im[p] = src[p].imag() - proj[p].imag();
            }
            sig += sigma_norm2(re, *ctx.tables) + sigma_norm2(im, *ctx.tables);
        }
        e.micro_sigma[m] = mult * sig;
    }
    return e;
}

std::vector<std::vector<std::vector<double>>> velocity_sums_per_index(const PhaseState& s, const Context& ctx,
                                                                      const std::vector<VelocityRequest>& req,
                                                                      int bmax) {
    require_fourier(s);
    const SpatialGrid& sg = ctx.sgrid();
    const VelocityGrid& g = ctx.vgrid();
    const std::size_t X = sg.size(), N = g.size();
    const double h3 = g.weight();
    const auto betas = velocity_multiindices(bmax);
    const AxisOperator D = zero_extended_difference(g.n(), g.spacing());
    const auto jap = g.japanese();

    // Weight fields per (request, |beta|).
    std::vector<std::vector<std::vector<double>>> W(req.size());
    bool need_micro = false, need_full = false;
    for (std::size_t r = 0; r < req.size(); ++r) {
        (req[r].micro ? need_micro : need_full) = true;
        for (int b = 0; b <= bmax; ++b) {
            auto w = weight_field(g, ctx.config.weight, req[r].ell - b, s.t);
            if (req[r].japanese)
                for (std::size_t p = 0; p < N; ++p) w[p] *= jap[p];
            W[r].push_back(std::move(w));
        }
    }

    std::vector<std::vector<std::vector<double>>> out(
        req.size(), std::vector<std::vector<double>>(betas.size(), std::vector<double>(X, 0.0)));
    std::vector<cplx> pp(N), pm(N);
    std::vector<double> u(N), du(N), tmp(N);
    for (const auto& [m, mult] : weighted_modes(sg)) {
        const auto fp = s.f.block(0, m), fm = s.f.block(1, m);
        if (need_micro) ctx.projection->reconstruct(ctx.projection->coefficients(fp, fm), pp, pm);
        for (int src = 0; src < 2; ++src) {
            const bool micro = src == 1;
            if (micro ? !need_micro : !need_full) continue;
            for (int sp = 0; sp < 2; ++sp)
                for (int part = 0; part < 2; ++part) {
                    const auto fs = sp == 0 ? fp : fm;
                    const auto& ps = sp == 0 ? pp : pm;
                    for (std::size_t p = 0; p < N; ++p) {
                        const cplx v = micro ? fs[p] - ps[p] : fs[p];
                        u[p] = part == 0 ? v.real() : v.imag();
                    }
                    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
                        const auto& beta = betas[bi];
                        const int b = beta[0] + beta[1] + beta[2];
                        derivative(D, beta, u, du, tmp);
                        for (std::size_t r = 0; r < req.size(); ++r) {
                            if (req[r].micro != micro) continue;
                            const auto& w = W[r][b];
                            double val;
                            if (req[r].sigma) {
                                val = sigma_norm2(du, *ctx.tables, w);
                            } else {
                                double acc = 0.0;
                                for (std::size_t p = 0; p < N; ++p) acc += w[p] * w[p] * du[p] * du[p];
                                val = h3 * acc;
                            }
                            out[r][bi][m] += mult * val;
                        }
                    }
                }
        }
    }
    return out;
}

std::vector<std::vector<std::vector<double>>> velocity_sums(const PhaseState& s, const Context& ctx,
                                                            const std::vector<VelocityRequest>& req, int bmax) {
    const auto per = velocity_sums_per_index(s, ctx, req, bmax);
    const auto betas = velocity_multiindices(bmax);
    const std::size_t X = ctx.sgrid().size();
    std::vector<std::vector<std::vector<double>>> out(
        req.size(), std::vector<std::vector<double>>(bmax + 1, std::vector<double>(X, 0.0)));
    for (std::size_t r = 0; r < req.size(); ++r)
        for (std::size_t bi = 0; bi < betas.size(); ++bi) {
            const int b = betas[bi][0] + betas[bi][1] + betas[bi][2];
            for (std::size_t m = 0; m < X; ++m) out[r][b][m] += per[r][bi][m];
        }
    return out;
}

namespace {

struct Ctx {
    const SpatialGrid& sg;
    std::vector<std::array<double, 3>> k;
    explicit Ctx(const SpatialGrid& g) : sg(g) {
        for (std::size_t m = 0; m < g.size(); ++m) k.push_back(g.wavevector(m));
    }
    double knorm(std::size_t m) const { return sg.wavenumber(m); }
};

double total(const ModeEnergies& e, std::size_t m) { return e.f[m] + e.E[m] + e.B[m]; }

double sum_unweighted(const Ctx& c, const ModeEnergies& e, int lo, int hi) {
    double acc = 0.0;
    for (std::size_t m = 0; m < c.k.size(); ++m) acc += derivative_weight(c.k[m], lo, hi) * total(e, m);
    return acc;
}

double sum_dissipation_k(const Ctx& c, const ModeEnergies& e, int k, int n0) {
    double acc = 0.0;
    for (std::size_t m = 0; m < c.k.size(); ++m) {
        const auto& kk = c.k[m];
        acc += symbol(kk, k) * (e.E[m] + e.charge[m]);
        acc += derivative_weight(kk, k + 1, n0 - 1) * (e.Pf[m] + e.E[m] + e.B[m]);
        acc += symbol(kk, n0) * e.Pf[m];
        acc += derivative_weight(kk, k, n0) * e.micro_sigma[m];
    }
    return acc;
}

// sum_m sum_b W(k, n - b) q[b][m] + fields over k..n_fields
double sum_weighted(const Ctx& c, const ModeEnergies& e, const std::vector<std::vector<double>>& q, int k, int n,
                    int n_fields) {
    double acc = 0.0;
    for (std::size_t m = 0; m < c.k.size(); ++m) {
        for (std::size_t b = 0; b < q.size(); ++b)
            acc += derivative_weight(c.k[m], k, n - static_cast<int>(b)) * q[b][m];
        acc += derivative_weight(c.k[m], k, n_fields) * (e.E[m] + e.B[m]);
    }
    return acc;
}

DissipationParts sum_dissipation_weighted(const Ctx& c, const ModeEnergies& e,
                                          const std::vector<std::vector<double>>& qs,
                                          const std::vector<std::vector<double>>& qj, int n, double t,
                                          double theta) {
    DissipationParts d;
    for (std::size_t m = 0; m < c.k.size(); ++m) {
        const auto& kk = c.k[m];
        d.macro += derivative_weight(kk, 1, n) * e.macro[m];
        for (std::size_t b = 0; b < qs.size(); ++b) {
            d.sigma += derivative_weight(kk, 0, n - static_cast<int>(b)) * qs[b][m];
            d.extra += derivative_weight(kk, 0, n - static_cast<int>(b)) * qj[b][m];
        }
        d.charge += e.charge[m];
        const double k2 = kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2];
        d.fields += derivative_weight(kk, 0, n - 1) * e.E[m] + k2 * derivative_weight(kk, 0, n - 2) * e.B[m];
    }
    d.factor = std::pow(1.0 + t, -1.0 - theta);
    return d;
}

double sum_negative(const Ctx& c, const std::vector<double>& v, double s) {
    double acc = 0.0;
    for (std::size_t m = 0; m < v.size(); ++m) {
        const double k = c.knorm(m);
        if (k > 0.0) acc += std::pow(k, -2.0 * s) * v[m];
    }
    return acc;
}

double sum_fractional(const Ctx& c, const ModeEnergies& e, double order) {
    const int n = static_cast<int>(std::floor(order));
    double acc = sum_unweighted(c, e, 0, n);
    if (order != n)
        for (std::size_t m = 0; m < c.k.size(); ++m) {
            const double k = c.knorm(m);
            if (k > 0.0) acc += std::pow(k, 2.0 * order) * total(e, m);
        }
    return acc;
}

int bmax_for(const Context& ctx, int n) { return std::min(ctx.config.beta_max, n); }

}  // namespace

double energy_unweighted(const PhaseState& s, const Context& ctx, int n) {
    return sum_unweighted(Ctx(ctx.sgrid()), mode_energies(s, ctx), 0, n);
}

double energy_k(const PhaseState& s, const Context& ctx, int k, int n0) {
    if (k > n0) throw DomainError("energy_k needs k <= n0");
    return sum_unweighted(Ctx(ctx.sgrid()), mode_energies(s, ctx), k, n0);
}

double dissipation_k(const PhaseState& s, const Context& ctx, int k, int n0) {
    if (k > n0) throw DomainError("dissipation_k needs k <= n0");
    return sum_dissipation_k(Ctx(ctx.sgrid()), mode_energies(s, ctx), k, n0);
}

double energy_weighted(const PhaseState& s, const Context& ctx, int n, double ell) {
    const auto q = velocity_sums(s, ctx, {{ell, false, false, false}}, bmax_for(ctx, n));
    return sum_weighted(Ctx(ctx.sgrid()), mode_energies(s, ctx), q[0], 0, n, n);
}

double energy_weighted_k(const PhaseState& s, const Context& ctx, int k, int n0, double ell) {
    const auto q = velocity_sums(s, ctx, {{ell, false, false, false}}, bmax_for(ctx, n0));
    return sum_weighted(Ctx(ctx.sgrid()), mode_energies(s, ctx), q[0], k, n0, n0);
}

DissipationParts dissipation_weighted_parts(const PhaseState& s, const Context& ctx, int n, double ell) {
    const auto q = velocity_sums(s, ctx, {{ell, false, true, true}, {ell, true, false, true}}, bmax_for(ctx, n));
    return sum_dissipation_weighted(Ctx(ctx.sgrid()), mode_energies(s, ctx), q[0], q[1], n, s.t,
                                    ctx.config.weight.theta);
}

double dissipation_weighted(const PhaseState& s, const Context& ctx, int n, double ell) {
    return dissipation_weighted_parts(s, ctx, n, ell).total();
}

double negative_sobolev2(const PhaseState& s, const Context& ctx, double s_exp) {
    const auto e = mode_energies(s, ctx);
    std::vector<double> tot(e.f.size());
    for (std::size_t m = 0; m < tot.size(); ++m) tot[m] = total(e, m);
    return sum_negative(Ctx(ctx.sgrid()), tot, s_exp);
}

double energy_fractional(const PhaseState& s, const Context& ctx, double order) {
    return sum_fractional(Ctx(ctx.sgrid()), mode_energies(s, ctx), order);
}

FunctionalReport compute_report(const PhaseState& s, const Context& ctx, long step) {
    const RunConfig& cfg = ctx.config;
    const Ctx c(ctx.sgrid());
    const auto e = mode_energies(s, ctx);
    const double sx = cfg.s;
    const double l = cfg.l(), l0 = cfg.l0, ltop = cfg.l0 + cfg.l_star();
    std::vector<VelocityRequest> req = {
        {l, false, false, false},  {l, false, true, true}, {l, true, false, true},
        {l0, false, false, false}, {ltop, false, false, false},
    };
    for (int k = 0; k < 3; ++k) req.push_back({0.5 * (k + sx), false, false, false});
    const auto q = velocity_sums(s, ctx, req, bmax_for(ctx, cfg.N));

    FunctionalReport r;
    r.t = s.t;
    r.step = step;
    for (std::size_t m = 0; m < e.f.size(); ++m) {
        r.f_l2sq += e.f[m];
        r.field_energy += e.E[m] + e.B[m];
    }
    r.E_N = sum_unweighted(c, e, 0, cfg.N);
    for (int k = 0; k < 3; ++k) {
        r.E_k[k] = sum_unweighted(c, e, k, cfg.N0);
        r.D_k[k] = sum_dissipation_k(c, e, k, cfg.N0);
        r.E_kw[k] = sum_weighted(c, e, q[3], k, cfg.N0, cfg.N0);
    }
    r.E_Nl = sum_weighted(c, e, q[0], 0, cfg.N, cfg.N);
    r.D_Nl = sum_dissipation_weighted(c, e, q[1], q[2], cfg.N, s.t, cfg.weight.theta).total();

    std::vector<double> tot(e.f.size());
    for (std::size_t m = 0; m < tot.size(); ++m) tot[m] = total(e, m);
    const double neg = sum_negative(c, tot, sx);
    r.Ebar_top = sum_weighted(c, e, q[4], 0, cfg.N0, cfg.N0) + neg;
    r.hs_f = std::sqrt(sum_negative(c, e.f, sx));
    r.hs_E = std::sqrt(sum_negative(c, e.E, sx));
    r.hs_B = std::sqrt(sum_negative(c, e.B, sx));
    for (std::size_t m = 0; m < e.f.size(); ++m)
        if (c.knorm(m) == 0.0) r.zero_mode += e.f[m];
    for (int k = 0; k < 3; ++k) {
        const double ebar = sum_weighted(c, e, q[5 + k], 0, cfg.N0, cfg.N0) + neg;
        r.cap[k] = std::max(ebar, sum_fractional(c, e, cfg.N0 + k + sx));
    }
    r.gauss = gauss_residual(s.em, s.f, ctx.sgrid(), ctx.vgrid());
    r.div_B = div_B(s.em, ctx.sgrid());
    DistributionPair raw = s.f;
    for (int sp = 0; sp < 2; ++sp) ctx.sgrid().inverse_batch(raw.species(sp).data(), raw.n_v());
    r.max_imag = raw.max_imag_ratio();
    return r;
}

}  // namespace vml
