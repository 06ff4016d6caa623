#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "vml/error.hpp"
#include "vml/phase_grid/distribution.hpp"
#include "vml/phase_grid/sobolev.hpp"
#include "vml/phase_grid/spatial_grid.hpp"
#include "vml/phase_grid/velocity_grid.hpp"
#include "vml/phase_grid/weight.hpp"

using namespace vml;

namespace {

std::vector<double> random_field(const SpatialGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<double> u(g.size());
    for (double& x : u) x = N(rng);
    return u;
}

std::size_t mode_index(const SpatialGrid& g, std::array<int, 3> k) {
    for (std::size_t m = 0; m < g.size(); ++m)
        if (g.frequency(m) == k) return m;
    throw std::runtime_error("mode not on grid");
}

}  // namespace

TEST_CASE("maxwellian at the origin and symmetry") {
    CHECK(maxwellian({0.0, 0.0, 0.0}) == doctest::Approx(0.0634936359342410).epsilon(1e-12));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (int i = 0; i < 50; ++i) {
        const Vec3 v{U(rng), U(rng), U(rng)};
        CHECK(maxwellian(v) == maxwellian({-v[0], -v[1], -v[2]}));
    }
    CHECK(japanese({0.0, 3.0, 4.0}) == doctest::Approx(std::sqrt(26.0)));
}

TEST_CASE("velocity grid geometry") {
    const VelocityGrid g(8, 6.0);
    CHECK(g.spacing() == doctest::Approx(1.5));
    CHECK(g.weight() == doctest::Approx(1.5 * 1.5 * 1.5));
    CHECK(g.size() == 512);
    CHECK(g.axis()[0] == doctest::Approx(-5.25));
    for (std::size_t p = 0; p < g.size(); ++p) {
        const auto [i, j, k] = g.unflatten(p);
        CHECK(g.index(i, j, k) == p);
        const Vec3 v = g.node(p), w = g.node(g.index(7 - i, 7 - j, 7 - k));
        for (int c = 0; c < 3; ++c) CHECK(v[c] == -w[c]);
    }
}

TEST_CASE("quadrature of the maxwellian at the default resolution") {
    // Oracles: the exact mass inside the box, erf(6/sqrt 2)^3, and a
    // refined grid. The remaining gap is the endpoint error of the
    // midpoint rule at the truncated tail.
    const VelocityGrid g(24, 6.0), fine(96, 6.0);
    const double inside = std::pow(std::erf(6.0 / std::sqrt(2.0)), 3);
    CHECK(std::abs(g.integrate(g.mu()) - 1.0) < 1e-6);
    CHECK(std::abs(g.integrate(g.mu()) - inside) < 1e-8);
    CHECK(std::abs(g.integrate(g.mu()) - fine.integrate(fine.mu())) < 1e-8);
}

TEST_CASE("polynomial moments up to degree four") {
    const VelocityGrid g(24, 6.0), fine(96, 6.0);
    auto moment = [](const VelocityGrid& grid, int a, int b, int c) {
        const auto vals = grid.tabulate([&](const Vec3& v) {
            return std::pow(v[0], a) * std::pow(v[1], b) * std::pow(v[2], c) * maxwellian(v);
        });
        return grid.integrate(vals);
    };
    const int cases[][4] = {{2, 0, 0, 1}, {4, 0, 0, 3}, {2, 2, 0, 1}, {0, 2, 2, 1}, {1, 1, 0, 0}, {1, 0, 1, 0}};
    for (const auto& c : cases) {
        const double m = moment(g, c[0], c[1], c[2]);
        CHECK(std::abs(m - moment(fine, c[0], c[1], c[2])) <= 1e-5 * std::max(1.0, std::abs(m)));
        CHECK(std::abs(m - c[3]) <= 1e-5);
    }
}

TEST_CASE("weight function") {
    const WeightParams p{-3.0, 7.0, 0.01, 0.25};
    SUBCASE("degenerate parameters give one") {
        const WeightParams d{-3.0, 0.0, 1e-15, 0.25};
        for (double t : {0.0, 1.0, 100.0})
            for (double r : {0.0, 1.0, 5.0}) CHECK(weight_w(d, t, {r, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("origin") {
        for (double t : {0.0, 0.5, 3.0, 40.0})
            CHECK(weight_w(p, t, {0.0, 0.0, 0.0}) ==
                  doctest::Approx(std::exp(p.q / std::pow(1.0 + t, p.theta))).epsilon(1e-14));
    }
    SUBCASE("strictly decreasing in t") {
        const Vec3 v{1.0, -2.0, 0.5};
        double prev = weight_w(p, 0.0, v);
        for (double t = 0.5; t < 50.0; t += 0.5) {
            const double w = weight_w(p, t, v);
            CHECK(w < prev);
            prev = w;
        }
    }
    SUBCASE("at least one for nonnegative order") {
        // -(gamma + 2) > 0, so the polynomial factor grows with <v> when ell >= 0.
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> U(-6.0, 6.0), T(0.0, 100.0), L(0.0, 5.0);
        for (int i = 0; i < 200; ++i) {
            const WeightParams q{-2.5, L(rng), 0.05, 0.25};
            CHECK(weight_w(q, T(rng), {U(rng), U(rng), U(rng)}) >= 1.0);
        }
        for (int i = 0; i < 200; ++i) {
            const WeightParams q{-2.5, -L(rng), 0.05, 0.25};
            const Vec3 v{U(rng), U(rng), U(rng)};
            const double t = T(rng), jv2 = 1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            CHECK(weight_w(q, t, v) <= std::exp(q.q * jv2 / std::pow(1.0 + t, q.theta)) * (1.0 + 1e-15));
        }
    }
    SUBCASE("explicit order") {
        const Vec3 v{3.0, 0.0, 0.0};
        CHECK(weight_w(p, 2.0, 0.0, v) == doctest::Approx(std::pow(10.0, 1.0) * std::exp(0.1)));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(weight_w(p, -1.0, {0.0, 0.0, 0.0}), DomainError);
        CHECK_NOTHROW(p.validate(0.5));
        CHECK_THROWS_AS((WeightParams{-2.0, 0.0, 0.01, 0.25}.validate(0.5)), DomainError);
        CHECK_THROWS_AS((WeightParams{-3.0, 0.0, 0.0, 0.25}.validate(0.5)), DomainError);
        CHECK_THROWS_AS((WeightParams{-3.0, 0.0, 0.2, 0.25}.validate(0.5)), DomainError);
        CHECK_THROWS_AS((WeightParams{-3.0, 0.0, 0.01, 0.3}.validate(0.5)), DomainError);
        CHECK_NOTHROW((WeightParams{-3.0, 0.0, 0.01, 0.1}.validate(1.2)));
        CHECK_THROWS_AS((WeightParams{-3.0, 0.0, 0.01, 0.2}.validate(1.2)), DomainError);
        CHECK_THROWS_AS(p.validate(1.5), DomainError);
    }
}

TEST_CASE("spatial grid wavevectors and inactive axes") {
    const SpatialGrid g(20.0 * std::numbers::pi, 16, {true, false, false});
    CHECK(g.size() == 16);
    CHECK(g.dims() == 1);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const auto k = g.wavevector(m);
        CHECK(k[1] == 0.0);
        CHECK(k[2] == 0.0);
        CHECK(k[0] == doctest::Approx(2.0 * std::numbers::pi * g.frequency(m)[0] / g.box_length()));
        CHECK(g.conjugate(g.conjugate(m)) == m);
    }
    const SpatialGrid g3(5.0, 8, {true, true, true});
    CHECK(g3.size() == 512);
    CHECK(g3.volume() == doctest::Approx(125.0));
}

TEST_CASE("fourier transform pair") {
    const SpatialGrid g(5.0, 16, {true, true, false});
    const auto u = random_field(g, 1);
    const auto hat = g.forward(std::span<const double>(u));

    SUBCASE("plancherel") {
        double phys = 0.0, spec = 0.0;
        for (double x : u) phys += x * x;
        for (const cplx& z : hat) spec += std::norm(z);
        CHECK(std::abs(phys * g.cell_volume() - spec) <= 1e-12 * spec);
    }
    SUBCASE("round trip") {
        const auto back = g.inverse(hat);
        for (std::size_t i = 0; i < u.size(); ++i) {
            CHECK(std::abs(back[i].real() - u[i]) < 1e-12);
            CHECK(std::abs(back[i].imag()) < 1e-12);
        }
    }
    SUBCASE("constant field") {
        const std::vector<double> c(g.size(), 2.0);
        const auto h = g.forward(std::span<const double>(c));
        CHECK(std::abs(h[0] - cplx(2.0 * std::sqrt(g.volume()), 0.0)) < 1e-12);
        for (std::size_t m = 1; m < h.size(); ++m) CHECK(std::abs(h[m]) < 1e-12);
    }
    SUBCASE("plane wave") {
        const std::size_t target = mode_index(g, {2, -1, 0});
        const auto k = g.wavevector(target);
        std::vector<cplx> w(g.size());
        for (std::size_t m = 0; m < g.size(); ++m) {
            const auto x = g.position(m);
            w[m] = std::exp(cplx(0.0, k[0] * x[0] + k[1] * x[1]));
        }
        const auto h = g.forward(std::span<const cplx>(w));
        for (std::size_t m = 0; m < h.size(); ++m) {
            if (m == target)
                CHECK(std::abs(h[m]) == doctest::Approx(std::sqrt(g.volume())));
            else
                CHECK(std::abs(h[m]) < 1e-10);
        }
    }
    SUBCASE("batched transform matches the scalar one") {
        std::vector<cplx> batch(g.size() * 2);
        const auto v = random_field(g, 2);
        for (std::size_t m = 0; m < g.size(); ++m) {
            batch[2 * m] = u[m];
            batch[2 * m + 1] = v[m];
        }
        g.forward_batch(batch.data(), 2);
        const auto hv = g.forward(std::span<const double>(v));
        for (std::size_t m = 0; m < g.size(); ++m) {
            CHECK(std::abs(batch[2 * m] - hat[m]) < 1e-12);
            CHECK(std::abs(batch[2 * m + 1] - hv[m]) < 1e-12);
        }
    }
}

TEST_CASE("distribution pair round trip stays real") {
    const SpatialGrid g(7.0, 8, {true, false, true});
    const VelocityGrid vg(8, 5.0);
    DistributionPair f(g.size(), vg.size());
    std::mt19937_64 rng(4);
    std::normal_distribution<double> N(0.0, 1.0);
    for (cplx& z : f.values()) z = N(rng);
    const DistributionPair orig = f;
    to_fourier(f, g);
    CHECK(f.space() == Space::fourier);
    to_physical(f, g);
    CHECK(f.space() == Space::physical);
    CHECK(f.max_imag_ratio() <= 1e-12);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f.data()[i] - orig.data()[i]) < 1e-12);
    CHECK(f.all_finite());
    f.data()[3] = cplx(NAN, 0.0);
    CHECK_FALSE(f.all_finite());
    DistributionPair wrong(4, vg.size());
    CHECK_THROWS_AS(to_fourier(wrong, g), ShapeError);
}

TEST_CASE("lambda_s multiplier") {
    const SpatialGrid g(6.0, 16, {true, true, false});
    const auto u = random_field(g, 5);
    const auto hat = g.forward(std::span<const double>(u));

    SUBCASE("s = 0 is the identity") {
        const auto a = lambda_s_apply(hat, g, 0.0);
        for (std::size_t m = 0; m < hat.size(); ++m) CHECK(a[m] == hat[m]);
    }
    SUBCASE("single mode scaling") {
        const std::size_t m0 = mode_index(g, {3, 1, 0});
        std::vector<cplx> e(g.size(), 0.0);
        e[m0] = 1.0;
        for (double s : {-1.2, -0.5, 0.7, 2.0}) {
            const auto a = lambda_s_apply(e, g, s);
            CHECK(a[m0].real() == doctest::Approx(std::pow(g.wavenumber(m0), s)).epsilon(1e-14));
        }
    }
    SUBCASE("composition is the identity on zero-mean fields") {
        for (double s : {0.5, 1.0, 1.4}) {
            const auto a = lambda_s_apply(lambda_s_apply(hat, g, -s), g, s);
            CHECK(std::abs(a[0]) == 0.0);
            for (std::size_t m = 1; m < hat.size(); ++m) CHECK(std::abs(a[m] - hat[m]) <= 1e-12 * std::abs(hat[m]) + 1e-15);
        }
    }
    SUBCASE("commutes with derivative multipliers") {
        auto dx = [&](std::vector<cplx> v) {
            for (std::size_t m = 0; m < v.size(); ++m) v[m] *= cplx(0.0, g.wavevector(m)[0]);
            return v;
        };
        const auto a = dx(lambda_s_apply(hat, g, -0.5));
        const auto b = lambda_s_apply(dx(hat), g, -0.5);
        for (std::size_t m = 0; m < hat.size(); ++m) CHECK(std::abs(a[m] - b[m]) <= 1e-12 * (1.0 + std::abs(a[m])));
    }
}

TEST_CASE("sobolev norms") {
    const SpatialGrid g(2.0 * std::numbers::pi, 16, {true, false, false});
    const std::vector<cplx> zero(g.size(), 0.0);
    const auto [h0, hn0] = sobolev_norms(zero, g, 0.5, 3);
    CHECK(h0 == 0.0);
    CHECK(hn0 == 0.0);

    const std::size_t m0 = mode_index(g, {3, 0, 0});
    std::vector<cplx> e(g.size(), 0.0);
    e[m0] = 1.0;
    const auto [hs, hn] = sobolev_norms(e, g, 0.5, 2);
    CHECK(hs == doctest::Approx(std::pow(3.0, -0.5)).epsilon(1e-14));
    CHECK(hn * hn == doctest::Approx(1.0 + 9.0 + 81.0).epsilon(1e-14));
    CHECK(derivative_energy(e, g, 2) == doctest::Approx(81.0));
    CHECK(homogeneous_norm(e, g, 0.5) == doctest::Approx(hs));
    CHECK(multiindex_symbol({1.0, 2.0, 3.0}, 1) == doctest::Approx(14.0));
    CHECK(multiindex_symbol({1.0, 2.0, 3.0}, 2) == doctest::Approx(1.0 + 16.0 + 81.0 + 4.0 + 9.0 + 36.0));
}

TEST_CASE("interpolation inequality on a gaussian bump") {
    const SpatialGrid g(40.0, 128, {true, false, false});
    std::vector<double> u(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double x = g.position(m)[0] - 20.0;
        u[m] = x * std::exp(-x * x / 2.0);
    }
    const auto hat = g.forward(std::span<const double>(u));
    for (double s : {0.5, 1.0, 1.4})
        for (int k = 0; k <= 2; ++k) {
            const double lhs = std::sqrt(derivative_energy(hat, g, k));
            const double rhs = std::pow(homogeneous_norm(hat, g, s), 1.0 / (k + s + 1.0)) *
                               std::pow(std::sqrt(derivative_energy(hat, g, k + 1)), (k + s) / (k + s + 1.0));
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    std::vector<double> phys(u);
    const auto [a, b] = sobolev_norms_physical(phys, g, 0.5, 1);
    const auto [c, d] = sobolev_norms(hat, g, 0.5, 1);
    CHECK(a == doctest::Approx(c));
    CHECK(b == doctest::Approx(d));
}
