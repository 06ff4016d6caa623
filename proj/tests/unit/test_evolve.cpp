#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "vml/cli/presets.hpp"
#include "vml/error.hpp"
#include "vml/evolve/checkpoint.hpp"
#include "vml/evolve/initial_data.hpp"
#include "vml/evolve/propagator.hpp"
#include "vml/evolve/run.hpp"
#include "vml/evolve/stepper.hpp"
#include "vml/evolve/y0.hpp"
#include "vml/landau/operator.hpp"
#include "vml/macro_micro/projection.hpp"

using namespace vml;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.n_v = 8;
    c.n_x = 8;
    c.box_length = 4.0 * std::numbers::pi;
    c.modes = 2;
    c.dt = 0.05;
    c.t_end = 0.5;
    c.output_every = 5;
    return c;
}

double f_norm2(const DistributionPair& f) {
    double s = 0.0;
    for (const cplx& z : f.values()) s += std::norm(z);
    return s;
}

double f_diff2(const DistributionPair& a, const DistributionPair& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return s;
}

double em_diff2(const EMField& a, const EMField& b) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < a.size(); ++m)
            s += std::norm(a.E[c][m] - b.E[c][m]) + std::norm(a.B[c][m] - b.B[c][m]);
    return s;
}

double state_diff(const PhaseState& a, const PhaseState& b) { return std::sqrt(f_diff2(a.f, b.f) + em_diff2(a.em, b.em)); }

bool bit_equal(const PhaseState& a, const PhaseState& b) {
    for (std::size_t i = 0; i < a.f.size(); ++i)
        if (a.f.data()[i] != b.f.data()[i]) return false;
    return em_diff2(a.em, b.em) == 0.0 && a.t == b.t;
}

PhaseState scaled(const PhaseState& s, double lam) {
    PhaseState o = s;
    for (cplx& z : o.f.values()) z *= lam;
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < o.em.size(); ++m) {
            o.em.E[c][m] *= lam;
            o.em.B[c][m] *= lam;
        }
    return o;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("vml_test_evolve_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.steps() == 2000);
    auto bad = [](auto mutate) {
        RunConfig c = small_config();
        mutate(c);
        CHECK_THROWS_AS(c.validate(), ConfigError);
    };
    bad([](RunConfig& c) { c.n_v = 9; });
    bad([](RunConfig& c) { c.n_v = 6; });
    bad([](RunConfig& c) { c.dt = 0.0; });
    bad([](RunConfig& c) { c.t_end = 0.51; });
    bad([](RunConfig& c) { c.N = 3; });
    bad([](RunConfig& c) { c.weight.ell = 5.0; });
    bad([](RunConfig& c) { c.eps0 = 1.0; });
    bad([](RunConfig& c) { c.output_every = 0; });
    bad([](RunConfig& c) { c.s = 2.0; });
    CHECK_THROWS_AS(make_context([] {
                        RunConfig c = small_config();
                        c.box_length = -1.0;
                        return c;
                    }()),
                    ConfigError);
    CHECK(parse_mode(to_string(Mode::nonlinear)) == Mode::nonlinear);
    CHECK(parse_solver(to_string(CollisionSolver::cg)) == CollisionSolver::cg);
    CHECK(parse_initial(to_string(InitialKind::vacuum_wave)) == InitialKind::vacuum_wave);
    CHECK_THROWS_AS(parse_mode("quadratic"), ConfigError);
}

TEST_CASE("zero data stays zero") {
    RunConfig c = small_config();
    c.initial = InitialKind::zero;
    c.mode = Mode::nonlinear;
    const RunResult r = run(c);
    CHECK(f_norm2(r.final_state.f) == 0.0);
    CHECK(field_energy(r.final_state.em) == 0.0);
    CHECK(r.final_state.t == doctest::Approx(0.5));
    CHECK(r.lyapunov.total_flags() == 0);
}

TEST_CASE("initial data is compatible and real") {
    for (InitialKind k : {InitialKind::broadband, InitialKind::homogeneous, InitialKind::vacuum_wave,
                          InitialKind::single_mode}) {
        RunConfig c = small_config();
        c.initial = k;
        const auto ctx = make_context(c);
        const PhaseState s = make_initial_state(*ctx);
        CAPTURE(to_string(k));
        CHECK(s.f.space() == Space::fourier);
        CHECK(gauss_residual(s.em, s.f, ctx->sgrid(), ctx->vgrid()) <= 1e-10);
        CHECK(div_B(s.em, ctx->sgrid()) <= 1e-12);
        CHECK(physical_f(s, *ctx).max_imag_ratio() == 0.0);
        CHECK(f_norm2(s.f) + field_energy(s.em) > 0.0);
    }
}

TEST_CASE("rhs on null-space data is pure transport") {
    RunConfig c = small_config();
    c.mode = Mode::linearized;
    const auto ctx = make_context(c);
    PhaseState s = make_initial_state(*ctx);
    s.em = EMField(ctx->sgrid().size());
    // keep only the macroscopic part of f
    s.f = project_P(s.f, *ctx->projection).first;
    const StateRate r = rhs_full(s, *ctx);
    const VelocityGrid& vg = ctx->vgrid();
    double err = 0.0, ref = 0.0;
    for (int sp = 0; sp < 2; ++sp)
        for (std::size_t m = 0; m < ctx->sgrid().size(); ++m) {
            const auto k = ctx->sgrid().wavevector(m);
            for (std::size_t p = 0; p < vg.size(); ++p) {
                const double kv = k[0] * vg.v(0)[p] + k[1] * vg.v(1)[p] + k[2] * vg.v(2)[p];
                const cplx expect = -cplx(0.0, kv) * s.f.block(sp, m)[p];
                err = std::max(err, std::abs(r.df.block(sp, m)[p] - expect));
                ref = std::max(ref, std::abs(expect));
            }
        }
    CHECK(ref > 0.0);
    CHECK(err <= 1e-10 * ref);
}

TEST_CASE("rhs homogeneity and the quadratic part") {
    RunConfig c = small_config();
    c.initial = InitialKind::broadband;
    c.amplitude = 1.0;
    auto lin_ctx = make_context(c);
    c.mode = Mode::nonlinear;
    auto nl_ctx = make_context(c);
    const PhaseState s = make_initial_state(*lin_ctx);

    const StateRate r1 = rhs_full(s, *lin_ctx);
    const StateRate r2 = rhs_full(scaled(s, 0.5), *lin_ctx);
    double e = 0.0;
    for (std::size_t i = 0; i < r1.df.size(); ++i) e = std::max(e, std::abs(0.5 * r1.df.data()[i] - r2.df.data()[i]));
    CHECK(e <= 1e-12 * std::sqrt(f_norm2(r1.df)));

    // nonlinear minus linear is quadratic in the state
    auto remainder = [&](double lam) {
        const PhaseState sl = scaled(s, lam);
        const StateRate a = rhs_full(sl, *nl_ctx), b = rhs_full(sl, *lin_ctx);
        return std::sqrt(f_diff2(a.df, b.df));
    };
    const double q1 = remainder(1e-2), q2 = remainder(5e-3);
    CHECK(q1 > 0.0);
    CHECK(q1 / q2 == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("free transport is exact") {
    RunConfig c = small_config();
    c.collisions = false;
    c.fields = false;
    c.t_end = 2.0;
    c.dt = 0.25;
    const auto ctx = make_context(c);
    const PhaseState s0 = make_initial_state(*ctx);
    const RunResult r = run(ctx);
    const VelocityGrid& vg = ctx->vgrid();
    double err = 0.0;
    for (int sp = 0; sp < 2; ++sp)
        for (std::size_t m = 0; m < ctx->sgrid().size(); ++m) {
            const auto k = ctx->sgrid().wavevector(m);
            for (std::size_t p = 0; p < vg.size(); ++p) {
                const double kv = k[0] * vg.v(0)[p] + k[1] * vg.v(1)[p] + k[2] * vg.v(2)[p];
                const cplx expect = std::exp(cplx(0.0, -kv * c.t_end)) * s0.f.block(sp, m)[p];
                err = std::max(err, std::abs(r.final_state.f.block(sp, m)[p] - expect));
            }
        }
    CHECK(err <= 1e-10 * std::sqrt(f_norm2(s0.f)));
}

TEST_CASE("vacuum wave returns after one period") {
    RunConfig c = small_config();
    c.initial = InitialKind::vacuum_wave;
    c.amplitude = 1.0;
    c.coupling = false;
    c.collisions = false;
    c.transport = false;
    c.mode_index = 1;
    c.box_length = 2.0 * std::numbers::pi;
    auto period_error = [&](double dt) {
        RunConfig d = c;
        d.dt = dt;
        d.t_end = 2.0 * std::numbers::pi;
        d.t_end = dt * std::round(d.t_end / dt);
        const auto ctx = make_context(d);
        const PhaseState s0 = make_initial_state(*ctx);
        const RunResult r = run(ctx);
        return std::sqrt(em_diff2(r.final_state.em, s0.em)) / std::sqrt(field_energy(s0.em));
    };
    const double e1 = period_error(2.0 * std::numbers::pi / 100), e2 = period_error(2.0 * std::numbers::pi / 200);
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e1 <= 2e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("homogeneous linearized relaxation contracts every step") {
    RunConfig c = small_config();
    c.initial = InitialKind::homogeneous;
    c.t_end = 2.0;
    c.dt = 0.1;
    const auto ctx = make_context(c);
    double prev = -1.0;
    long increases = 0;
    RunOptions opt;
    opt.on_step = [&](const PhaseState& s, long) {
        const double n = f_norm2(s.f);
        if (prev >= 0.0 && n > prev * (1.0 + 1e-12)) ++increases;
        prev = n;
    };
    const RunResult r = run(ctx, opt);
    CHECK(increases == 0);
    CHECK(r.lyapunov.total_flags() == 0);
    CHECK(r.backend == "dense");
}

TEST_CASE("global second order") {
    RunConfig c = small_config();
    c.mode = Mode::nonlinear;
    c.amplitude = 0.05;
    c.t_end = 1.0;
    c.output_every = 1000;
    auto final_state = [&](double dt) {
        RunConfig d = c;
        d.dt = dt;
        RunOptions opt;
        opt.keep_reports = false;
        return run(d, opt).final_state;
    };
    const PhaseState a = final_state(0.1), b = final_state(0.05), d = final_state(0.025);
    const double e1 = state_diff(a, b), e2 = state_diff(b, d);
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("gauss residual drift is second order") {
    RunConfig c = small_config();
    c.t_end = 1.0;
    auto drift = [&](double dt) {
        RunConfig d = c;
        d.dt = dt;
        const auto ctx = make_context(d);
        const RunResult r = run(ctx);
        return gauss_residual(r.final_state.em, r.final_state.f, ctx->sgrid(), ctx->vgrid()) +
               div_B(r.final_state.em, ctx->sgrid());
    };
    const double e1 = drift(0.1), e2 = drift(0.05);
    CAPTURE(e1);
    CAPTURE(e2);
    const double slope = std::log2(e1 / e2);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("collision propagators") {
    RunConfig c = small_config();
    const auto ctx = make_context(c);
    const double tau = 0.2;
    const ReducedPropagator red(ctx->tables, tau);
    const DensePropagator dense(ctx->tables, tau);
    const CgPropagator cg(ctx->tables, tau, 1e-12, 500);
    const VelocityGrid& vg = ctx->vgrid();

    SUBCASE("dissipation identity") {
        for (const CollisionPropagator* p : {static_cast<const CollisionPropagator*>(&dense),
                                             static_cast<const CollisionPropagator*>(&cg)}) {
            // plain sums, without the quadrature weight
            VelocityPair y = vml::test::noise_pair(vg, 3);
            const double n0 = std::pow(vml::test::norm2(y), 2);
            const double ret = p->advance(y);
            const double n1 = std::pow(vml::test::norm2(y), 2);
            CAPTURE(p->name());
            CHECK(ret >= 0.0);
            CHECK(std::abs((n1 - n0) + 2.0 * tau * ret) <= 1e-8 * n0);
        }
    }

    SUBCASE("batch equals individual advances") {
        std::vector<VelocityPair> ys;
        for (std::uint64_t k = 0; k < 5; ++k) ys.push_back(vml::test::noise_pair(vg, 20 + k));
        auto singles = ys;
        const auto d = dense.advance_batch(ys);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double di = dense.advance(singles[i]);
            CHECK(d[i] == doctest::Approx(di).epsilon(1e-12));
            CHECK(vml::test::pair_diff(ys[i], singles[i]) <= 1e-13 * vml::test::pair_max(singles[i]));
        }
    }

    SUBCASE("reduced agrees with dense on symmetric input") {
        // symmetric under v2 -> -v2, v3 -> -v3 and v2 <-> v3
        VelocityPair y(vg.size());
        for (std::size_t p = 0; p < vg.size(); ++p) {
            const Vec3 v = vg.node(p);
            const double r2 = v[1] * v[1] + v[2] * v[2];
            y.plus[p] = (1.0 + v[0] + 0.3 * r2 + 0.1 * v[1] * v[1] * v[2] * v[2]) * std::sqrt(vg.mu()[p]);
            y.minus[p] = (v[0] * v[0] - 0.5 * r2) * std::sqrt(vg.mu()[p]);
        }
        VelocityPair a = y, b = y;
        const double da = red.advance(a), db = dense.advance(b);
        CHECK(red.reduced_size() < vg.size());
        CHECK(vml::test::pair_diff(a, b) <= 1e-11 * vml::test::pair_max(y));
        CHECK(da == doctest::Approx(db).epsilon(1e-9));
    }

    SUBCASE("cg agrees with dense") {
        VelocityPair a = vml::test::noise_pair(vg, 9), b = a;
        cg.advance(a);
        dense.advance(b);
        CHECK(vml::test::pair_diff(a, b) <= 1e-9 * vml::test::pair_max(b));
        CHECK(cg.last_iterations() > 0);
    }

    SUBCASE("collision backend choice") {
        const PhaseState s = make_initial_state(*ctx);
        CHECK(resolve_solver(*ctx, s) == CollisionSolver::reduced);
        PhaseState t = s;
        t.em.E[1][1] = 1e-3;
        CHECK(resolve_solver(*ctx, t) == CollisionSolver::dense);
    }
}

TEST_CASE("determinism and checkpoint resume") {
    RunConfig c = small_config();
    c.mode = Mode::nonlinear;
    c.t_end = 1.0;
    c.checkpoint_every = 10;
    const fs::path dir = scratch("resume");
    RunOptions opt;
    opt.checkpoint_dir = dir.string();
    const RunResult full = run(c, opt);
    const RunResult again = run(c, opt);
    CHECK(bit_equal(full.final_state, again.final_state));
    REQUIRE(full.reports.size() == again.reports.size());
    for (std::size_t i = 0; i < full.reports.size(); ++i) CHECK(full.reports[i].E_N == again.reports[i].E_N);

    const fs::path ck = dir / "ckpt_00000010.bin";
    REQUIRE(fs::exists(ck));
    const auto ctx = make_context(c);
    const Checkpoint loaded = load_checkpoint(ck.string(), *ctx);
    CHECK(loaded.step == 10);
    CHECK(loaded.state.t == doctest::Approx(0.5));

    RunOptions res;
    res.resume = ck.string();
    const RunResult resumed = run(c, res);
    CHECK(bit_equal(full.final_state, resumed.final_state));
    CHECK(resumed.x_sup == full.x_sup);
    CHECK(resumed.lyapunov.total_flags() == full.lyapunov.total_flags());

    SUBCASE("corrupt and mismatched checkpoints") {
        const fs::path bad = dir / "bad.bin";
        {
            std::ofstream o(bad, std::ios::binary);
            o << "not a checkpoint";
        }
        CHECK_THROWS_AS(load_checkpoint(bad.string(), *ctx), IoError);
        CHECK_THROWS_AS(load_checkpoint((dir / "missing.bin").string(), *ctx), IoError);
        RunConfig other = c;
        other.n_x = 16;
        CHECK_THROWS_AS(load_checkpoint(ck.string(), *make_context(other)), IoError);
        fs::resize_file(ck, fs::file_size(ck) - 8);
        CHECK_THROWS_AS(load_checkpoint(ck.string(), *ctx), IoError);
    }
    fs::remove_all(dir);
}

TEST_CASE("non-finite state aborts with a last-good dump") {
    RunConfig c = small_config();
    const auto ctx = make_context(c);
    const fs::path dir = scratch("nan");
    PhaseState s = make_initial_state(*ctx);
    s.f.block(0, 1)[0] = cplx(std::nan(""), 0.0);
    save_checkpoint((dir / "poison.bin").string(), s, 0, 0.0, std::vector<double>(16, 0.0));
    RunOptions opt;
    opt.resume = (dir / "poison.bin").string();
    opt.checkpoint_dir = (dir / "out").string();
    bool thrown = false;
    try {
        run(ctx, opt);
    } catch (const NonFiniteState& e) {
        thrown = true;
        CHECK(e.step() == 0);
    }
    CHECK(thrown);
    CHECK(fs::exists(dir / "out" / "last_good.bin"));
    fs::remove_all(dir);
}

TEST_CASE("Y0 functional") {
    RunConfig c = small_config();
    const auto ctx = make_context(c);
    const PhaseState s = make_initial_state(*ctx);
    CHECK(y0_functional(PhaseState(*ctx), *ctx) == 0.0);
    const double y = y0_functional(s, *ctx);
    CHECK(y > 0.0);
    CHECK(std::abs(y0_functional(scaled(s, 3.0), *ctx) - 3.0 * y) <= 1e-12 * y);
    CHECK(std::abs(y0_functional(scaled(s, 1e-12), *ctx) - 1e-12 * y) <= 1e-12 * 1e-12 * y);
}

TEST_CASE("Y0 golden value on the small broadband preset") {
    const auto ctx = make_context(preset("small-broadband"));
    const double y = y0_functional(make_initial_state(*ctx), *ctx);
    CHECK(y == doctest::Approx(1314540.2588762087).epsilon(1e-10));
}

TEST_CASE("quadratic remainder of the nonlinear run") {
    RunConfig c = small_config();
    c.t_end = 0.5;
    c.dt = 0.05;
    c.output_every = 1000;
    auto remainder = [&](double lam) {
        RunConfig lin = c, nl = c;
        lin.amplitude = nl.amplitude = lam;
        nl.mode = Mode::nonlinear;
        RunOptions opt;
        opt.keep_reports = false;
        return state_diff(run(lin, opt).final_state, run(nl, opt).final_state) / (lam * lam);
    };
    const double r1 = remainder(1e-2), r2 = remainder(5e-3), r3 = remainder(2.5e-3);
    CAPTURE(r1);
    CAPTURE(r2);
    CAPTURE(r3);
    CHECK(r1 > 0.0);
    CHECK(r2 / r1 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r3 / r2 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("linearized field step matches the midpoint rule on the full rhs") {
    RunConfig c = small_config();
    c.transport = false;
    c.collisions = false;
    c.amplitude = 0.1;
    const auto ctx = make_context(c);
    PhaseState s = make_initial_state(*ctx);
    const SpatialGrid& sg = ctx->sgrid();
    // transverse parts so the curls contribute
    for (std::size_t m = 0; m < sg.size(); ++m) {
        if (sg.wavevector(m)[0] == 0.0) continue;
        s.em.E[1][m] = cplx(0.01 * double(m), 0.0);
        s.em.B[2][m] = cplx(0.0, -0.02);
    }
    const double tau = 0.1;

    auto shifted = [](const PhaseState& a, double h, const StateRate& r) {
        PhaseState o = a;
        for (std::size_t i = 0; i < o.f.size(); ++i) o.f.data()[i] += h * r.df.data()[i];
        for (int k = 0; k < 3; ++k)
            for (std::size_t m = 0; m < o.em.size(); ++m) {
                o.em.E[k][m] += h * r.fields.dE[k][m];
                o.em.B[k][m] += h * r.fields.dB[k][m];
            }
        return o;
    };
    const PhaseState ref = shifted(s, tau, rhs_full(shifted(s, 0.5 * tau, rhs_full(s, *ctx)), *ctx));

    const Stepper st(ctx, s);
    PhaseState out = s;
    st.field_force(out, tau);
    const double scale = std::sqrt(f_norm2(s.f) + em_diff2(s.em, EMField(s.em.size())));
    CHECK(state_diff(out, ref) <= 1e-13 * scale);
    CHECK(state_diff(out, s) > 1e-3 * scale);
}
