#include "vml/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vml/diagnostics/riesz.hpp"
#include "vml/error.hpp"
#include "vml/evolve/initial_data.hpp"
#include "vml/evolve/run.hpp"
#include "vml/landau/coercivity.hpp"
#include "vml/landau/dense.hpp"
#include "vml/landau/operator.hpp"
#include "vml/landau/sigma_norm.hpp"
#include "vml/landau/tables.hpp"
#include "vml/macro_micro/projection.hpp"
#include "vml/maxwell/em_field.hpp"
#include "vml/phase_grid/sobolev.hpp"
#include "vml/simd/kernels.hpp"

namespace vml {

namespace {

// pass when value <= threshold
VerifyCheck below(const std::string& suite, const std::string& name, double value, double threshold,
                  std::string detail = {}) {
    return {suite, name, value, threshold, std::isfinite(value) && value <= threshold, std::move(detail)};
}

// pass when value > threshold
VerifyCheck above(const std::string& suite, const std::string& name, double value, double threshold,
                  std::string detail = {}) {
    return {suite, name, value, threshold, std::isfinite(value) && value > threshold, std::move(detail)};
}

double norm2(const VelocityPair& f) {
    double acc = 0.0;
    for (int s = 0; s < 2; ++s)
        for (double x : f[s]) acc += x * x;
    return std::sqrt(acc);
}

VelocityPair diff(const VelocityPair& a, const VelocityPair& b) {
    VelocityPair d(a.size());
    for (int s = 0; s < 2; ++s)
        for (std::size_t p = 0; p < a.size(); ++p) d[s][p] = a[s][p] - b[s][p];
    return d;
}

std::vector<VerifyCheck> operator_suite() {
    const std::string S = "operator";
    std::vector<VerifyCheck> out;
    const VelocityGrid grid(12, 6.0);
    const auto tables = build_collision_tables(grid, -3.0);
    const Projection proj(grid);

    double worst = 0.0;
    for (const auto& e : proj.null_basis()) {
        const auto Le = apply_L(e, *tables);
        worst = std::max(worst, std::sqrt(sigma_norm2(Le, *tables) / sigma_norm2(e, *tables)));
    }
    out.push_back(below(S, "null space |L e|_sigma / |e|_sigma (n_v=12)", worst, 1e-6));

    double sym = 0.0, neg = 0.0;
    for (std::uint64_t k = 0; k < 8; ++k) {
        const auto f = random_hermite_pair(grid, 100 + 2 * k), g = random_hermite_pair(grid, 101 + 2 * k);
        const double a = form_L(f, g, *tables), b = form_L(g, f, *tables);
        const double scale = std::sqrt(form_L(f, f, *tables) * form_L(g, g, *tables));
        sym = std::max(sym, std::abs(a - b) / scale);
        neg = std::max(neg, -form_L(f, f, *tables) / (norm2(apply_L(f, *tables)) * norm2(f)));
    }
    out.push_back(below(S, "self-adjointness |<Lf,g> - <f,Lg>| relative", sym, 1e-8));
    out.push_back(below(S, "nonnegativity -<Lf,f> relative", neg, 1e-8));

    try {
        const auto rep = coercivity_gap(*tables, proj, 100);
        char buf[96];
        std::snprintf(buf, sizeof buf, "median %.6g over %zu samples", rep.median_ratio, rep.ratios.size());
        out.push_back(above(S, "coercivity gap min <Lg,g>/|g|^2_sigma", rep.min_ratio, 0.0, buf));
    } catch (const CoercivityFailure& e) {
        out.push_back({S, "coercivity gap min <Lg,g>/|g|^2_sigma", e.ratio(), 0.0, false, e.what()});
    }

    {
        const VelocityGrid g8(8, 6.0);
        const auto t8 = build_collision_tables(g8, -3.0);
        const Eigen::MatrixXd Ld = assemble_L_dense(*t8);
        double err = 0.0;
        for (std::uint64_t k = 0; k < 3; ++k) {
            const auto f = random_hermite_pair(g8, 300 + k);
            const auto Lf = apply_L(f, *t8);
            Eigen::VectorXd x(2 * g8.size());
            for (std::size_t p = 0; p < g8.size(); ++p) {
                x[p] = f.plus[p];
                x[g8.size() + p] = f.minus[p];
            }
            const Eigen::VectorXd y = Ld * x;
            double num = 0.0, den = 0.0;
            for (std::size_t p = 0; p < g8.size(); ++p) {
                num = std::max({num, std::abs(y[p] - Lf.plus[p]), std::abs(y[g8.size() + p] - Lf.minus[p])});
                den = std::max({den, std::abs(Lf.plus[p]), std::abs(Lf.minus[p])});
            }
            err = std::max(err, num / den);
        }
        out.push_back(below(S, "dense assembly vs matrix-free (n_v=8)", err, 1e-10));
    }

    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        const auto mu = grid.mu();
        double worst_mass = 0.0;
        for (int k = 0; k < 4; ++k) {
            std::vector<double> F(grid.size()), G(grid.size());
            for (std::size_t p = 0; p < grid.size(); ++p) {
                F[p] = mu[p] * (1.0 + 0.5 * U(rng));
                G[p] = mu[p] * (1.0 + 0.5 * U(rng));
            }
            const auto Q = apply_Q(F, G, *tables);
            double mass = 0.0, scale = 0.0;
            for (double q : Q) {
                mass += q;
                scale += std::abs(q);
            }
            worst_mass = std::max(worst_mass, std::abs(mass) / scale);
        }
        out.push_back(below(S, "mass of Q(F,G) relative to |Q|", worst_mass, 1e-8));
    }

    if (const simd::KernelTable* avx = simd::avx2_kernels()) {
        const auto& sc = simd::scalar_kernels();
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        const std::size_t n = 1031;
        std::vector<double> x(n), y(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = U(rng);
            y[i] = U(rng);
            w[i] = U(rng);
        }
        const double a = sc.dot(n, x.data(), y.data()), b = avx->dot(n, x.data(), y.data());
        const double c = sc.wdot(n, w.data(), x.data(), y.data()), d = avx->wdot(n, w.data(), x.data(), y.data());
        out.push_back(below(S, "simd avx2 dot/wdot vs scalar", std::max(std::abs(a - b), std::abs(c - d)), 1e-12));
    }
    return out;
}

std::vector<VerifyCheck> projection_suite() {
    const std::string S = "projection";
    std::vector<VerifyCheck> out;
    const VelocityGrid grid(12, 6.0);
    const Projection P(grid);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> N01(0.0, 1.0);
    auto random_pair = [&] {
        VelocityPair f(grid.size());
        for (int s = 0; s < 2; ++s)
            for (std::size_t p = 0; p < grid.size(); ++p) f[s][p] = N01(rng) * std::pow(grid.mu()[p], 0.25);
        return f;
    };
    double idem = 0.0, comp = 0.0, orth = 0.0, pyth = 0.0;
    bool swap_exact = true;
    for (int k = 0; k < 10; ++k) {
        const auto f = random_pair(), g = random_pair();
        const auto Pf = P.project(f);
        idem = std::max(idem, norm2(diff(P.project(Pf), Pf)) / norm2(f));
        comp = std::max(comp, norm2(P.project(P.micro(f))) / norm2(f));
        const double nf = std::sqrt(pair_inner(f, f, grid)), ng = std::sqrt(pair_inner(g, g, grid));
        orth = std::max(orth, std::abs(pair_inner(Pf, P.micro(g), grid)) / (nf * ng));
        const double lhs = pair_inner(Pf, Pf, grid) + pair_inner(P.micro(f), P.micro(f), grid);
        pyth = std::max(pyth, std::abs(lhs - nf * nf) / (nf * nf));
        const auto a = P.coefficients(f.plus, f.minus), b = P.coefficients(f.minus, f.plus);
        swap_exact = swap_exact && a.a_plus == b.a_minus && a.a_minus == b.a_plus && a.b == b.b && a.c == b.c;
    }
    out.push_back(below(S, "idempotence |P(Pf) - Pf| / |f|", idem, 1e-12));
    out.push_back(below(S, "complementarity |P(I-P)f| / |f|", comp, 1e-12));
    out.push_back(below(S, "orthogonality |<Pf,(I-P)g>|", orth, 1e-10));
    out.push_back(below(S, "pythagoras |Pf|^2 + |(I-P)f|^2 = |f|^2", pyth, 1e-10));
    out.push_back({S, "species swap exact", swap_exact ? 0.0 : 1.0, 0.0, swap_exact, ""});

    VelocityPair e(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) e.plus[p] = grid.sqrt_mu()[p];
    const auto c = P.coefficients(e.plus, e.minus);
    const double err = std::max({std::abs(c.a_plus - 1.0), std::abs(c.a_minus), std::abs(c.b[0]), std::abs(c.c)});
    out.push_back(below(S, "a+ of [mu^{1/2}, 0] equals 1", err, 1e-6));
    return out;
}

std::vector<VerifyCheck> maxwell_suite() {
    const std::string S = "maxwell";
    std::vector<VerifyCheck> out;
    const SpatialGrid sg(2.0 * M_PI, 8, {true, true, true});
    std::mt19937_64 rng(23);
    std::normal_distribution<double> N01(0.0, 1.0);
    auto random_field = [&] {
        VectorField u;
        for (int c = 0; c < 3; ++c) {
            std::vector<double> x(sg.size());
            for (double& v : x) v = N01(rng);
            u[c] = sg.forward(std::span<const double>(x));
        }
        return u;
    };
    const auto X = random_field();
    const double dc = l2_norm(divergence(curl(X, sg), sg));
    double scale = 0.0;
    for (int c = 0; c < 3; ++c) scale += l2_norm(X[c]);
    out.push_back(below(S, "div curl X relative", dc / scale, 1e-12));

    {
        const VelocityGrid vg(8, 6.0);
        DistributionPair f(sg.size(), vg.size(), Space::fourier);
        for (std::size_t m = 0; m < sg.size(); ++m) {
            if (m == 0) continue;
            const cplx amp(N01(rng), N01(rng));
            for (std::size_t p = 0; p < vg.size(); ++p) f.block(0, m)[p] = amp * vg.sqrt_mu()[p];
        }
        // Hermitian symmetry keeps the charge real.
        for (std::size_t m : sg.half_modes()) {
            const std::size_t mc = sg.conjugate(m);
            if (mc == m) {
                for (std::size_t p = 0; p < vg.size(); ++p) f.block(0, m)[p] = f.block(0, m)[p].real();
                continue;
            }
            for (std::size_t p = 0; p < vg.size(); ++p) f.block(0, mc)[p] = std::conj(f.block(0, m)[p]);
        }
        for (std::size_t p = 0; p < vg.size(); ++p) f.block(0, 0)[p] = 0.0;
        EMField guess(sg.size());
        guess.E = random_field();
        guess.B = random_field();
        const EMField em = make_compatible(guess, f, sg, vg);
        out.push_back(below(S, "compatible data: gauss residual", gauss_residual(em, f, sg, vg), 1e-10));
        out.push_back(below(S, "compatible data: |div B|", div_B(em, sg), 1e-12));
    }

    {
        RunConfig c;
        c.n_v = 8;
        c.n_x = 16;
        c.box_length = 2.0 * M_PI;
        c.initial = InitialKind::vacuum_wave;
        c.amplitude = 1.0;
        c.coupling = false;
        c.collisions = false;
        c.transport = false;
        c.dt = 2.0 * M_PI / 400.0;
        c.t_end = 2.0 * M_PI;
        c.output_every = 400;
        const auto res = run(c);
        const auto& r0 = res.reports.front();
        const auto& r1 = res.reports.back();
        const auto ctx = make_context(c);
        const PhaseState init = make_initial_state(*ctx);
        double err = 0.0, ref = 0.0;
        for (int k = 0; k < 3; ++k)
            for (std::size_t m = 0; m < init.em.size(); ++m) {
                err += std::norm(res.final_state.em.E[k][m] - init.em.E[k][m]) +
                       std::norm(res.final_state.em.B[k][m] - init.em.B[k][m]);
                ref += std::norm(init.em.E[k][m]) + std::norm(init.em.B[k][m]);
            }
        out.push_back(below(S, "vacuum wave returns after one period", std::sqrt(err / ref), 1e-3));
        out.push_back(below(S, "vacuum field energy drift over one period",
                            std::abs(r1.field_energy - r0.field_energy) / r0.field_energy, 1e-5));
    }
    return out;
}

std::vector<VerifyCheck> transforms_suite() {
    const std::string S = "transforms";
    std::vector<VerifyCheck> out;
    const SpatialGrid sg(5.0, 16, {true, true, true});
    std::mt19937_64 rng(29);
    std::normal_distribution<double> N01(0.0, 1.0);
    std::vector<double> u(sg.size());
    for (double& v : u) v = N01(rng);
    const auto hat = sg.forward(std::span<const double>(u));
    double phys = 0.0, spec = 0.0;
    for (double v : u) phys += v * v;
    for (const cplx& z : hat) spec += std::norm(z);
    phys *= sg.cell_volume();
    out.push_back(below(S, "plancherel", std::abs(phys - spec) / phys, 1e-12));

    const auto back = sg.inverse(hat);
    double rt = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        rt = std::max(rt, std::abs(back[i] - u[i]));
        mx = std::max(mx, std::abs(u[i]));
    }
    out.push_back(below(S, "inverse(forward(u)) = u", rt / mx, 1e-12));

    for (double s : {0.5, 1.0, 1.4}) {
        const auto a = lambda_s_apply(lambda_s_apply(hat, sg, -s), sg, s);
        double e = 0.0, n = 0.0;
        for (std::size_t m = 1; m < hat.size(); ++m) {
            e += std::norm(a[m] - hat[m]);
            n += std::norm(hat[m]);
        }
        char name[64];
        std::snprintf(name, sizeof name, "Lambda^s Lambda^-s = I on zero-mean fields, s=%.1f", s);
        out.push_back(below(S, name, std::sqrt(e / n), 1e-12));
    }

    const RieszReport rr = riesz_checks(0.5);
    for (const auto& it : rr.items) {
        char detail[128];
        std::snprintf(detail, sizeof detail, "lhs slope %.5f, rhs slope %.5f, predicted %.5f, max ratio %.4g",
                      it.lhs_slope, it.rhs_slope, it.predicted_slope, it.max_ratio);
        out.push_back({S, it.name + ": slope mismatch", std::abs(it.lhs_slope - it.rhs_slope), 0.02, it.pass, detail});
    }
    double mink = 0.0;
    bool mink_ok = true;
    for (const auto& m : rr.minkowski) {
        mink_ok = mink_ok && m.pass;
        if (m.p == m.q) mink = std::max(mink, std::abs(m.lhs - m.rhs) / m.rhs);
    }
    out.push_back({S, "minkowski L^q_x L^p_v <= L^p_v L^q_x (equality at p=q)", mink, 1e-12, mink_ok && mink <= 1e-12,
                   std::to_string(rr.minkowski.size()) + " (p,q) pairs"});
    return out;
}

}  // namespace

bool VerifyReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

std::string VerifyReport::json() const {
    nlohmann::json j;
    j["pass"] = pass();
    j["seconds"] = seconds;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"suite", c.suite},
                               {"name", c.name},
                               {"value", c.value},
                               {"threshold", c.threshold},
                               {"pass", c.pass},
                               {"detail", c.detail}});
    return j.dump(2);
}

std::string VerifyReport::summary() const {
    std::ostringstream out;
    int failed = 0;
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "[%s] %-11s %s  value=%.3e threshold=%.3e", c.pass ? "PASS" : "FAIL",
                      c.suite.c_str(), c.name.c_str(), c.value, c.threshold);
        out << line;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
        failed += c.pass ? 0 : 1;
    }
    out << checks.size() - failed << "/" << checks.size() << " checks passed in " << seconds << " s\n";
    return out.str();
}

std::vector<std::string> verify_suites() { return {"operator", "projection", "maxwell", "transforms"}; }

std::vector<VerifyCheck> run_suite(const std::string& suite) {
    if (suite == "operator") return operator_suite();
    if (suite == "projection") return projection_suite();
    if (suite == "maxwell") return maxwell_suite();
    if (suite == "transforms") return transforms_suite();
    throw ConfigError("unknown verify suite '" + suite + "' (operator, projection, maxwell, transforms, all)");
}

VerifyReport run_verify(const std::string& suite, int jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> names = suite == "all" ? verify_suites() : std::vector<std::string>{suite};
    const auto known = verify_suites();
    if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end())
        throw ConfigError("unknown verify suite '" + suite + "' (operator, projection, maxwell, transforms, all)");
    VerifyReport rep;
    if (jobs > 1) {
        std::vector<std::future<std::vector<VerifyCheck>>> fut;
        for (const auto& n : names) fut.push_back(std::async(std::launch::async, run_suite, n));
        for (auto& f : fut) {
            auto c = f.get();
            rep.checks.insert(rep.checks.end(), c.begin(), c.end());
        }
    } else {
        for (const auto& n : names) {
            auto c = run_suite(n);
            rep.checks.insert(rep.checks.end(), c.begin(), c.end());
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace vml
