#include "vml/landau/coercivity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vml/landau/operator.hpp"
#include "vml/landau/sigma_norm.hpp"

namespace vml {

namespace {

// Probabilists' Hermite polynomials He_0..He_deg at x, normalised by sqrt(k!).
std::vector<double> hermite(double x, int deg) {
    std::vector<double> h(deg + 1);
    h[0] = 1.0;
    if (deg >= 1) h[1] = x;
    for (int k = 2; k <= deg; ++k) h[k] = x * h[k - 1] - (k - 1) * h[k - 2];
    double fact = 1.0;
    for (int k = 1; k <= deg; ++k) {
        fact *= k;
        h[k] /= std::sqrt(fact);
    }
    return h;
}

}  // namespace

VelocityPair random_hermite_pair(const VelocityGrid& grid, std::uint64_t seed, int degree) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = grid.n();
    std::vector<std::vector<double>> H(n);
    for (int i = 0; i < n; ++i) H[i] = hermite(grid.axis()[i], degree);

    VelocityPair f(grid.size());
    const auto sq = grid.sqrt_mu();
    for (int s = 0; s < 2; ++s)
        for (int a = 0; a <= degree; ++a)
            for (int b = 0; a + b <= degree; ++b)
                for (int c = 0; a + b + c <= degree; ++c) {
                    const double coef = normal(rng);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            for (int k = 0; k < n; ++k) {
                                const std::size_t p = grid.index(i, j, k);
                                f[s][p] += coef * H[i][a] * H[j][b] * H[k][c] * sq[p];
                            }
                }
    return f;
}

double coercivity_ratio(const VelocityPair& f, const CollisionTables& tables, const Projection& proj) {
    const VelocityPair g = proj.micro(f);
    const double den = sigma_norm2(g, tables);
    const double full = sigma_norm2(f, tables);
    if (!(den > 1e-24 * full) || den == 0.0)
        throw DomainError("input is macroscopic: {I-P}f vanishes, coercivity ratio undefined");
    return form_L(g, g, tables) / den;
}

CoercivityReport coercivity_gap(const CollisionTables& tables, const Projection& proj, int samples,
                                std::uint64_t seed, int degree) {
    if (samples < 1) throw DomainError("coercivity sampling needs at least one sample");
    CoercivityReport rep;
    std::vector<std::uint64_t> seeds(samples);
    {
        std::mt19937_64 master(seed);
        for (auto& s : seeds) s = master();
    }
    for (int i = 0; i < samples; ++i) {
        const VelocityPair f = random_hermite_pair(tables.grid(), seeds[i], degree);
        const double r = coercivity_ratio(f, tables, proj);
        if (!(r > 0.0))
            throw CoercivityFailure("nonpositive coercivity ratio " + std::to_string(r) + " at sample " +
                                        std::to_string(i),
                                    i, r, proj.micro(f));
        rep.ratios.push_back(r);
    }
    std::vector<double> sorted = rep.ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.min_ratio = sorted.front();
    const std::size_t m = sorted.size();
    rep.median_ratio = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    return rep;
}

}  // namespace vml
