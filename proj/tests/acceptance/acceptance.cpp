// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vml/cli/csv.hpp"
#include "vml/cli/presets.hpp"
#include "vml/cli/verify.hpp"
#include "vml/diagnostics/decay.hpp"
#include "vml/diagnostics/riesz.hpp"
#include "vml/evolve/run.hpp"
#include "vml/landau/coercivity.hpp"
#include "vml/landau/dense.hpp"
#include "vml/landau/operator.hpp"
#include "vml/landau/sigma_norm.hpp"
#include "vml/macro_micro/projection.hpp"
#include "vml/phase_grid/sobolev.hpp"

using namespace vml;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double pair_norm(const VelocityPair& f, const VelocityGrid& g) { return std::sqrt(pair_inner(f, f, g)); }

VelocityPair noise(const VelocityGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N;
    VelocityPair f(g.size());
    for (int s = 0; s < 2; ++s)
        for (std::size_t p = 0; p < g.size(); ++p) f[s][p] = N(rng) * std::pow(g.mu()[p], 0.25);
    return f;
}

double max_diff(const VelocityPair& a, const VelocityPair& b) {
    double m = 0.0;
    for (int s = 0; s < 2; ++s)
        for (std::size_t p = 0; p < a.size(); ++p) m = std::max(m, std::abs(a[s][p] - b[s][p]));
    return m;
}

double max_abs(const VelocityPair& a) {
    double m = 0.0;
    for (int s = 0; s < 2; ++s)
        for (double x : a[s]) m = std::max(m, std::abs(x));
    return m;
}

// --- 1 ---------------------------------------------------------------------
Outcome null_space() {
    const auto t0 = Clock::now();
    const VelocityGrid g(24, 6.0);
    const auto tables = build_collision_tables(g, -3.0);
    const Projection P(g);
    double worst = 0.0;
    for (const auto& e : P.null_basis()) {
        const double num = std::sqrt(sigma_norm2(apply_L(e, *tables), *tables));
        const double den = std::sqrt(sigma_norm2(e, *tables));
        worst = std::max(worst, num / den);
    }
    const double sec = seconds_since(t0);
    return {worst <= 1e-6 && sec < 60.0,
            fmt("max |L e|_sigma/|e|_sigma = %.3e over 6 basis vectors at n_v=24 (tol 1e-6), %.1f s (< 60 s)", worst,
                sec)};
}

// --- 2 ---------------------------------------------------------------------
Outcome coercivity() {
    const auto t0 = Clock::now();
    double m[2];
    const int ns[2] = {16, 24};
    for (int i = 0; i < 2; ++i) {
        const VelocityGrid g(ns[i], 6.0);
        const auto tables = build_collision_tables(g, -3.0);
        const Projection P(g);
        m[i] = coercivity_gap(*tables, P, 100).min_ratio;
    }
    const double rel = std::abs(m[0] - m[1]) / m[1];
    const double sec = seconds_since(t0);
    return {m[0] > 0.0 && m[1] > 0.0 && rel <= 0.2 && sec < 300.0,
            fmt("min <Lf,f>/|{I-P}f|^2_sigma over 100 samples: n_v=16 %.4f, n_v=24 %.4f, change %.1f%% (<= 20%%), "
                "%.1f s (< 300 s)",
                m[0], m[1], 100.0 * rel, sec)};
}

// --- 3 ---------------------------------------------------------------------
Outcome symmetry() {
    const VelocityGrid g(16, 6.0);
    const auto tables = build_collision_tables(g, -3.0);
    double asym = 0.0, neg = 0.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const VelocityPair f = noise(g, 100 + k), h = noise(g, 200 + k);
        const VelocityPair Lf = apply_L(f, *tables), Lh = apply_L(h, *tables);
        const double scale = pair_norm(Lf, g) * pair_norm(h, g) + pair_norm(Lh, g) * pair_norm(f, g);
        asym = std::max(asym, std::abs(pair_inner(Lf, h, g) - pair_inner(f, Lh, g)) / scale);
        neg = std::max(neg, -pair_inner(Lf, f, g) / (pair_norm(Lf, g) * pair_norm(f, g)));
    }
    const VelocityGrid g8(8, 6.0);
    const auto t8 = build_collision_tables(g8, -3.0);
    const Eigen::MatrixXd D = assemble_L_dense(*t8);
    const std::size_t N = g8.size();
    double dense = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
        const VelocityPair f = noise(g8, 300 + k);
        Eigen::VectorXd x(2 * N);
        for (std::size_t p = 0; p < N; ++p) {
            x[p] = f.plus[p];
            x[N + p] = f.minus[p];
        }
        const Eigen::VectorXd y = D * x;
        const VelocityPair Lf = apply_L(f, *t8);
        VelocityPair yd(N);
        for (std::size_t p = 0; p < N; ++p) {
            yd.plus[p] = y[p];
            yd.minus[p] = y[N + p];
        }
        dense = std::max(dense, max_diff(yd, Lf) / max_abs(Lf));
    }
    return {asym <= 1e-8 && neg <= 1e-8 && dense <= 1e-10,
            fmt("self-adjointness %.2e, negativity %.2e (tol 1e-8, n_v=16, 20 pairs); dense vs matrix-free at n_v=8 "
                "%.2e (tol 1e-10)",
                asym, std::max(neg, 0.0), dense)};
}

// --- 4 ---------------------------------------------------------------------
Outcome projection() {
    const VelocityGrid g(16, 6.0);
    const Projection P(g);
    double idem = 0.0, orth = 0.0;
    bool swap = true;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const VelocityPair f = noise(g, 400 + k), h = noise(g, 500 + k);
        const VelocityPair Pf = P.project(f);
        idem = std::max(idem, max_diff(P.project(Pf), Pf) / max_abs(f));
        orth = std::max(orth, std::abs(pair_inner(Pf, P.micro(h), g)) / (pair_norm(f, g) * pair_norm(h, g)));
        VelocityPair fs(g.size());
        fs.plus = f.minus;
        fs.minus = f.plus;
        const VelocityPair Pfs = P.project(fs);
        swap = swap && Pfs.plus == Pf.minus && Pfs.minus == Pf.plus;
    }
    return {idem <= 1e-10 && orth <= 1e-10 && swap,
            fmt("|P^2 f - P f| %.2e, <Pf,{I-P}g> %.2e (tol 1e-10); species swap %s", idem, orth,
                swap ? "exact" : "NOT exact")};
}

// --- 5 ---------------------------------------------------------------------
Outcome conservation() {
    // F, G positive and non-Maxwellian: sums of displaced Gaussians.
    auto two_bump = [](const VelocityGrid& g, double u, double T) {
        std::vector<double> F(g.size());
        for (std::size_t p = 0; p < g.size(); ++p) {
            const Vec3 v = g.node(p);
            const double a = (v[0] - u) * (v[0] - u) + v[1] * v[1] + v[2] * v[2];
            const double b = (v[0] + u) * (v[0] + u) + v[1] * v[1] + v[2] * v[2];
            F[p] = 0.5 * (std::exp(-a / (2 * T)) + std::exp(-b / (2 * T))) / std::pow(2 * std::numbers::pi * T, 1.5);
        }
        return F;
    };
    double mass = 0.0;
    std::string mom;
    double worst_me = 0.0;
    for (int n : {8, 12, 16, 24}) {
        const VelocityGrid g(n, 6.0);
        const auto tables = build_collision_tables(g, -3.0);
        const auto F = two_bump(g, 1.0, 0.8), G = two_bump(g, 0.5, 1.2);
        for (const auto& [a, b] : {std::pair{&F, &G}, std::pair{&G, &F}, std::pair{&F, &F}}) {
            const auto Q = apply_Q(*a, *b, *tables);
            double m = 0.0, s = 0.0;
            for (std::size_t p = 0; p < g.size(); ++p) {
                m += Q[p];
                s += std::abs(Q[p]);
            }
            mass = std::max(mass, std::abs(m) / s);
        }
        const auto Q = apply_Q(F, F, *tables);
        double m1 = 0.0, e = 0.0, s1 = 0.0, se = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) {
            const Vec3 v = g.node(p);
            const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            m1 += v[0] * Q[p];
            s1 += std::abs(v[0] * Q[p]);
            e += v2 * Q[p];
            se += std::abs(v2 * Q[p]);
        }
        const double rm = std::abs(m1) / s1, re = std::abs(e) / se;
        worst_me = std::max({worst_me, rm, re});
        mom += fmt(" n=%d:(%.1e,%.1e)", n, rm, re);
    }
    // Exact discrete conservation makes the refinement order unmeasurable;
    // the values sit at round-off at every resolution.
    return {mass <= 1e-8 && worst_me <= 1e-10,
            fmt("mass %.2e (tol 1e-8); momentum/energy of Q(F,F) relative:%s, at the round-off floor on every grid so "
                "the refinement order is not measurable",
                mass, mom.c_str())};
}

// --- 6 ---------------------------------------------------------------------
Outcome constraints() {
    RunConfig c;
    c.n_v = 8;
    c.n_x = 16;
    c.box_length = 4.0 * std::numbers::pi;
    c.modes = 4;
    c.amplitude = 1e-2;
    c.t_end = 2.0;
    c.output_every = 1000;
    double divb = 0.0;
    auto gauss_at_end = [&](double dt) {
        RunConfig d = c;
        d.dt = dt;
        const auto ctx = make_context(d);
        RunOptions opt;
        opt.keep_reports = false;
        double g = 0.0;
        opt.on_step = [&](const PhaseState& s, long) {
            divb = std::max(divb, div_B(s.em, ctx->sgrid()));
            g = gauss_residual(s.em, s.f, ctx->sgrid(), ctx->vgrid());
        };
        run(ctx, opt);
        return g;
    };
    const double g1 = gauss_at_end(0.1), g2 = gauss_at_end(0.05), g3 = gauss_at_end(0.025);
    const double o1 = std::log2(g1 / g2), o2 = std::log2(g2 / g3);
    return {divb <= 1e-10 && std::abs(o1 - 2.0) <= 0.3 && std::abs(o2 - 2.0) <= 0.3,
            fmt("max div B %.2e (tol 1e-10); Gauss residual at t=2: %.3e, %.3e, %.3e for dt=0.1/0.05/0.025, orders "
                "%.2f, %.2f (2.0 +- 0.3)",
                divb, g1, g2, g3, o1, o2)};
}

// --- 7 and 8 share the default run ------------------------------------------
struct DefaultRun {
    RunResult result;
    double seconds = 0.0;
};

const DefaultRun& default_run() {
    static const DefaultRun r = [] {
        const auto t0 = Clock::now();
        DefaultRun d;
        d.result = run(RunConfig{});
        d.seconds = seconds_since(t0);
        return d;
    }();
    return r;
}

Outcome lyapunov() {
    const DefaultRun& d = default_run();
    const auto& l = d.result.lyapunov;
    std::string parts;
    for (std::size_t i = 0; i < l.names.size(); ++i)
        parts += fmt(" %s:%ld flags (worst %.3g of allowance)", l.names[i].c_str(), l.flags[i], l.worst_ratio[i]);
    return {l.total_flags() == 0 && d.seconds < 600.0,
            fmt("default linearized run n_x=64 n_v=16, %ld steps, backend %s:%s; %.0f s (< 600 s)", l.steps,
                d.result.backend.c_str(), parts.c_str(), d.seconds)};
}

Outcome decay() {
    const DefaultRun& d = default_run();
    std::vector<double> t, e0, e1;
    for (const auto& r : d.result.reports) {
        t.push_back(r.t);
        e0.push_back(r.E_k[0]);
        e1.push_back(r.E_k[1]);
    }
    const double s = RunConfig{}.s;
    const DecayFit f0 = auto_decay_fit(t, e0, 0, s), f1 = auto_decay_fit(t, e1, 1, s);
    const double late0 = late_exponential_rate(t, e0), late1 = late_exponential_rate(t, e1);
    const bool ok0 = f0.reliable && std::abs(f0.exponent + 0.5) <= 0.3;
    const bool ok1 = f1.reliable && f1.exponent <= f0.exponent - 0.5 + 0.3;
    std::printf("    %s\n", kTorusCaveat);
    std::printf("    late-time exponential rate: E^0 %.4g, E^1 %.4g (last quarter of the run)\n", late0, late1);
    return {ok0 && ok1,
            fmt("E^0 slope %.3f on [%.0f, %.0f] (residual %.1e; target -0.5 +- 0.3); E^1 slope %.3f on [%.0f, %.0f] "
                "(residual %.1e; needs <= slope(E^0) - 0.5 + 0.3 = %.3f)",
                f0.exponent, f0.t0, f0.t1, f0.residual, f1.exponent, f1.t0, f1.t1, f1.residual,
                f0.exponent - 0.2)};
}

// --- 9 ---------------------------------------------------------------------
Outcome transforms() {
    const SpatialGrid sg(5.0, 16, {true, true, true});
    std::mt19937_64 rng(9);
    std::normal_distribution<double> N;
    std::vector<double> u(sg.size());
    for (double& x : u) x = N(rng);
    double mean = 0.0;
    for (double x : u) mean += x;
    mean /= static_cast<double>(u.size());
    double phys = 0.0;
    for (double& x : u) {
        x -= mean;
        phys += x * x;
    }
    phys *= sg.cell_volume();
    const auto uk = sg.forward(std::span<const double>(u));
    double spec = 0.0;
    for (const cplx& z : uk) spec += std::norm(z);
    const double planch = std::abs(spec - phys) / phys;
    double lam = 0.0;
    for (double s : {0.5, 1.0, 1.4}) {
        const auto w = lambda_s_apply(lambda_s_apply(uk, sg, -s), sg, s);
        for (std::size_t m = 0; m < uk.size(); ++m) lam = std::max(lam, std::abs(w[m] - uk[m]) / std::sqrt(spec));
    }
    const RieszReport rr = riesz_checks(0.5);
    double slope = 0.0;
    for (const auto& it : rr.items) slope = std::max(slope, std::abs(it.lhs_slope - it.rhs_slope));
    return {planch <= 1e-12 && lam <= 1e-12 && slope <= 0.02 && rr.pass(),
            fmt("Plancherel %.2e, Lambda^s Lambda^-s %.2e (tol 1e-12); %zu interpolation/Riesz items, max log-log slope "
                "mismatch %.2e (tol 0.02)",
                planch, lam, rr.items.size(), slope)};
}

// --- 10 --------------------------------------------------------------------
Outcome quadratic_remainder() {
    RunConfig c = preset("small-broadband");
    c.t_end = 5.0;
    c.output_every = 1000;
    auto ratio = [&](double lam) {
        RunConfig lin = c, nl = c;
        lin.amplitude = nl.amplitude = lam;
        nl.mode = Mode::nonlinear;
        RunOptions opt;
        opt.keep_reports = false;
        const PhaseState a = run(lin, opt).final_state, b = run(nl, opt).final_state;
        double d = 0.0;
        for (std::size_t i = 0; i < a.f.size(); ++i) d += std::norm(a.f.data()[i] - b.f.data()[i]);
        for (int k = 0; k < 3; ++k)
            for (std::size_t m = 0; m < a.em.size(); ++m)
                d += std::norm(a.em.E[k][m] - b.em.E[k][m]) + std::norm(a.em.B[k][m] - b.em.B[k][m]);
        return std::sqrt(d) / (lam * lam);
    };
    const double r1 = ratio(1e-3), r2 = ratio(5e-4), r3 = ratio(2.5e-4);
    const double q1 = r1 / r2, q2 = r2 / r3;
    auto within = [](double q) { return q <= 1.5 && q >= 1.0 / 1.5; };
    return {r1 > 0.0 && within(q1) && within(q2),
            fmt("|nl - lin|/A^2 = %.5g, %.5g, %.5g for A = 1e-3, 5e-4, 2.5e-4; successive ratios %.4f, %.4f (within "
                "x1.5)",
                r1, r2, r3, q1, q2)};
}

// --- 11 --------------------------------------------------------------------
Outcome reproducibility() {
    const auto t0 = Clock::now();
    const VerifyReport v = run_verify("all");
    const double sec = seconds_since(t0);
    auto csv_of = [] {
        RunConfig c = preset("small-broadband");
        std::ostringstream out;
        write_csv(out, run(c).reports);
        return out.str();
    };
    const std::string a = csv_of(), b = csv_of();
    std::size_t failed = 0;
    for (const auto& ck : v.checks) failed += ck.pass ? 0 : 1;
    return {v.pass() && sec < 600.0 && a == b,
            fmt("verify all: %zu checks, %zu failed, %.0f s (< 600 s); two small-broadband runs with seed 1 give %s "
                "CSV output (%zu bytes)",
                v.checks.size(), failed, sec, a == b ? "bit-identical" : "DIFFERENT", a.size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"null space", null_space},
        {"coercivity", coercivity},
        {"self-adjointness and nonnegativity", symmetry},
        {"projection", projection},
        {"conservation", conservation},
        {"constraints", constraints},
        {"lyapunov", lyapunov},
        {"decay ordering and slope", decay},
        {"transforms and norms", transforms},
        {"quadratic remainder", quadratic_remainder},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
