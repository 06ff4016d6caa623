#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vml/error.hpp"
#include "vml/maxwell/em_field.hpp"

using namespace vml;

namespace {

const cplx I(0.0, 1.0);

VectorField random_field(const SpatialGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N;
    VectorField u = zero_vector_field(g.size());
    for (auto& c : u)
        for (auto& z : c) z = cplx(N(rng), N(rng));
    return u;
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

// f+ = alpha mu^{1/2} in mode m and its conjugate, f- = 0.
DistributionPair charge_mode(const SpatialGrid& sg, const VelocityGrid& vg, std::size_t m, cplx alpha) {
    DistributionPair f(sg.size(), vg.size(), Space::fourier);
    for (std::size_t p = 0; p < vg.size(); ++p) {
        f.block(0, m)[p] = alpha * vg.sqrt_mu()[p];
        f.block(0, sg.conjugate(m))[p] = std::conj(alpha) * vg.sqrt_mu()[p];
    }
    return f;
}

double mass_of_mu(const VelocityGrid& vg) {
    double s = 0.0;
    for (std::size_t p = 0; p < vg.size(); ++p) s += vg.sqrt_mu()[p] * vg.sqrt_mu()[p];
    return s * vg.weight();
}

}  // namespace

TEST_CASE("div curl vanishes") {
    const SpatialGrid g(3.0, 6, {true, true, true});
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto X = random_field(g, s);
        CHECK(max_abs(divergence(curl(X, g), g)) <= 1e-12);
    }
}

TEST_CASE("curl of a gradient vanishes") {
    const SpatialGrid g(2.0 * std::numbers::pi, 4, {true, true, false});
    VectorField grad = zero_vector_field(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        const auto k = g.wavevector(m);
        for (int c = 0; c < 3; ++c) grad[c][m] = I * k[c] * cplx(0.3, -0.1 * double(m));
    }
    for (const auto& c : curl(grad, g)) CHECK(max_abs(c) <= 1e-12);
}

TEST_CASE("even distribution carries no current") {
    const SpatialGrid sg(2.0 * std::numbers::pi, 4, {true, false, false});
    const VelocityGrid vg(8, 5.0);
    DistributionPair f(sg.size(), vg.size(), Space::fourier);
    for (std::size_t m = 0; m < sg.size(); ++m)
        for (std::size_t p = 0; p < vg.size(); ++p) {
            const double v2 = vg.speed2()[p];
            f.block(0, m)[p] = cplx(1.0 + m, 0.5) * std::exp(-0.3 * v2);
            f.block(1, m)[p] = cplx(0.2, -double(m)) * v2 * std::exp(-0.4 * v2);
        }
    const EMField em(sg.size());
    const auto r = field_rhs(em, f, sg, vg);
    for (int c = 0; c < 3; ++c) {
        CHECK(max_abs(r.dE[c]) <= 1e-14);
        CHECK(max_abs(r.dB[c]) == 0.0);
    }
}

TEST_CASE("field rhs keeps div B fixed") {
    const SpatialGrid sg(5.0, 4, {true, true, false});
    const VelocityGrid vg(6, 5.0);
    EMField em(sg.size());
    em.E = random_field(sg, 3);
    em.B = random_field(sg, 4);
    const DistributionPair f(sg.size(), vg.size(), Space::fourier);
    const auto r = field_rhs(em, f, sg, vg);
    CHECK(max_abs(divergence(r.dB, sg)) <= 1e-12);
}

TEST_CASE("gauss residual and div B") {
    const SpatialGrid sg(2.0 * std::numbers::pi, 4, {true, false, false});
    const VelocityGrid vg(8, 5.0);
    DistributionPair f(sg.size(), vg.size(), Space::fourier);
    for (std::size_t m = 0; m < sg.size(); ++m)
        for (std::size_t p = 0; p < vg.size(); ++p) {
            f.block(0, m)[p] = cplx(0.4, 0.1 * double(m)) * vg.sqrt_mu()[p];
            f.block(1, m)[p] = f.block(0, m)[p];
        }
    const EMField em(sg.size());
    CHECK(gauss_residual(em, f, sg, vg) == 0.0);
    CHECK(div_B(em, sg) == 0.0);
    CHECK_THROWS_AS(gauss_residual(EMField(sg.size() + 1), f, sg, vg), ShapeError);
}

TEST_CASE("make_compatible") {
    const SpatialGrid sg(4.0 * std::numbers::pi, 8, {true, true, false});
    const VelocityGrid vg(8, 5.0);

    SUBCASE("neutral f and transverse E are left alone") {
        const DistributionPair f(sg.size(), vg.size(), Space::fourier);
        EMField guess(sg.size());
        guess.E = curl(random_field(sg, 7), sg);
        guess.B = random_field(sg, 8);
        const EMField out = make_compatible(guess, f, sg, vg);
        for (int c = 0; c < 3; ++c)
            for (std::size_t m = 0; m < sg.size(); ++m) CHECK(std::abs(out.E[c][m] - guess.E[c][m]) <= 1e-12);
        CHECK(div_B(out, sg) <= 1e-12);
        CHECK(gauss_residual(out, f, sg, vg) <= 1e-10);
    }

    SUBCASE("single charge mode matches the hand-solved Poisson relation") {
        const std::size_t m = 1;
        const cplx alpha(0.3, -0.2);
        const auto f = charge_mode(sg, vg, m, alpha);
        EMField guess(sg.size());
        guess.E = random_field(sg, 9);
        const EMField out = make_compatible(guess, f, sg, vg);
        CHECK(gauss_residual(out, f, sg, vg) <= 1e-10);

        // i kappa . E = rho, so the longitudinal part is -i kappa rho / |kappa|^2.
        const auto k = sg.wavevector(m);
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        const cplx rho = alpha * mass_of_mu(vg);
        cplx kE(0.0);
        for (int c = 0; c < 3; ++c) kE += k[c] * out.E[c][m];
        CHECK(std::abs(kE / std::sqrt(k2) - (-I * rho / std::sqrt(k2))) <= 1e-12);
        // transverse part of the guess survives
        cplx kG(0.0);
        for (int c = 0; c < 3; ++c) kG += k[c] * guess.E[c][m];
        for (int c = 0; c < 3; ++c) {
            const cplx tg = guess.E[c][m] - k[c] * kG / k2;
            const cplx to = out.E[c][m] - k[c] * kE / k2;
            CHECK(std::abs(tg - to) <= 1e-12);
        }
    }

    SUBCASE("net charge is rejected") {
        const auto f = charge_mode(sg, vg, 0, cplx(0.5, 0.0));
        CHECK_THROWS_AS(make_compatible(EMField(sg.size()), f, sg, vg), DomainError);
    }
}

TEST_CASE("vacuum plane wave rotates at unit speed over one period") {
    // E = e2 cos(kx - wt), B = e3 cos(kx - wt) with w = k, in one active direction.
    const double L = 2.0 * std::numbers::pi;
    const SpatialGrid sg(L, 8, {true, false, false});
    const VelocityGrid vg(4, 4.0);
    const DistributionPair f(sg.size(), vg.size(), Space::fourier);
    std::size_t m = 0;
    for (std::size_t i = 0; i < sg.size(); ++i)
        if (std::abs(sg.wavevector(i)[0] - 2.0) < 1e-12) m = i;
    REQUIRE(m != 0);
    const double k = sg.wavevector(m)[0];

    EMField em(sg.size());
    em.E[1][m] = 0.5;
    em.E[1][sg.conjugate(m)] = 0.5;
    em.B[2][m] = 0.5;
    em.B[2][sg.conjugate(m)] = 0.5;
    const EMField start = em;
    const double e0 = field_energy(em);

    auto axpy = [](const EMField& a, double s, const FieldRate& r) {
        EMField o = a;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < a.size(); ++i) {
                o.E[c][i] += s * r.dE[c][i];
                o.B[c][i] += s * r.dB[c][i];
            }
        return o;
    };
    const int steps = 400;
    const double period = 2.0 * std::numbers::pi / k, h = period / steps;
    double drift = 0.0;
    for (int s = 0; s < steps; ++s) {
        const auto k1 = field_rhs(em, f, sg, vg);
        const auto k2 = field_rhs(axpy(em, 0.5 * h, k1), f, sg, vg);
        const auto k3 = field_rhs(axpy(em, 0.5 * h, k2), f, sg, vg);
        const auto k4 = field_rhs(axpy(em, h, k3), f, sg, vg);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < em.size(); ++i) {
                em.E[c][i] += h / 6.0 * (k1.dE[c][i] + 2.0 * k2.dE[c][i] + 2.0 * k3.dE[c][i] + k4.dE[c][i]);
                em.B[c][i] += h / 6.0 * (k1.dB[c][i] + 2.0 * k2.dB[c][i] + 2.0 * k3.dB[c][i] + k4.dB[c][i]);
            }
        drift = std::max(drift, std::abs(field_energy(em) - e0));
        if (s == steps / 4 - 1) {
            // a quarter period later the mode has picked up the phase e^{-i w t} = -i
            CHECK(std::abs(em.E[1][m] - (-I * 0.5)) <= 1e-8);
        }
    }
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < em.size(); ++i) {
            CHECK(std::abs(em.E[c][i] - start.E[c][i]) <= 1e-8);
            CHECK(std::abs(em.B[c][i] - start.B[c][i]) <= 1e-8);
        }
    CHECK(drift <= 1e-8 * e0);
}
