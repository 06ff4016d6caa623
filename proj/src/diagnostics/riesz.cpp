#include "vml/diagnostics/riesz.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "vml/error.hpp"
#include "vml/phase_grid/sobolev.hpp"
#include "vml/phase_grid/spatial_grid.hpp"

namespace vml {

bool RieszReport::pass() const {
    for (const auto& i : items)
        if (!i.pass) return false;
    for (const auto& m : minkowski)
        if (!m.pass) return false;
    return true;
}

namespace {

double lp_norm(const std::vector<double>& u, double p, double dv) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : u) m = std::max(m, std::abs(x));
        return m;
    }
    double acc = 0.0;
    for (double x : u) acc += std::pow(std::abs(x), p);
    return std::pow(acc * dv, 1.0 / p);
}

// Everything the inequalities need for one dilated sample.
class Sample {
public:
    Sample(const SpatialGrid& g, double lambda) : g_(g) {
        std::vector<double> u(g.size());
        const double c = 0.5 * g.box_length();
        for (std::size_t m = 0; m < g.size(); ++m) {
            auto x = g.position(m);
            double r2 = 0.0;
            for (double& xi : x) {
                xi = (xi - c) / lambda;
                r2 += xi * xi;
            }
            u[m] = x[0] * std::exp(-0.5 * r2);
        }
        hat_ = g.forward(std::span<const double>(u));
        hat_[0] = 0.0;
    }

    // ||Lambda^a f|| (L^2), zero mode excluded.
    double lambda_l2(double a) const { return homogeneous_norm(hat_, g_, -a); }
    // ||grad^k f||
    double grad_l2(int k) const { return std::sqrt(derivative_energy(hat_, g_, k)); }

    // ||Lambda^a f||_{L^p}
    double lambda_lp(double a, double p) const {
        const auto spec = lambda_s_apply(hat_, g_, a);
        return lp_norm(real_part(g_.inverse(spec)), p, g_.cell_volume());
    }

    // || |grad^j f| ||_{L^p}, |grad^j f|^2 = sum_{|alpha| = j} |d^alpha f|^2
    double grad_lp(int j, double p) const {
        std::vector<double> mag2(g_.size(), 0.0);
        for_each_multiindex(j, [&](const std::array<int, 3>& a) {
            std::vector<cplx> d(hat_.size());
            for (std::size_t m = 0; m < hat_.size(); ++m) {
                const auto k = g_.wavevector(m);
                cplx f = hat_[m];
                for (int i = 0; i < 3; ++i)
                    for (int r = 0; r < a[i]; ++r) f *= cplx(0.0, k[i]);
                d[m] = f;
            }
            const auto phys = real_part(g_.inverse(d));
            for (std::size_t m = 0; m < phys.size(); ++m) mag2[m] += phys[m] * phys[m];
        });
        for (double& x : mag2) x = std::sqrt(x);
        return lp_norm(mag2, p, g_.cell_volume());
    }

private:
    static std::vector<double> real_part(const std::vector<cplx>& z) {
        std::vector<double> r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) r[i] = z[i].real();
        return r;
    }
    // Every ordered multi-index path of length j: d^alpha counted with its
    // multinomial multiplicity so that the sum is the full tensor norm.
    static void for_each_multiindex(int j, const std::function<void(const std::array<int, 3>&)>& fn) {
        std::array<int, 3> a{0, 0, 0};
        std::function<void(int)> rec = [&](int left) {
            if (left == 0) {
                fn(a);
                return;
            }
            for (int i = 0; i < 3; ++i) {
                ++a[i];
                rec(left - 1);
                --a[i];
            }
        };
        rec(j);
    }

    const SpatialGrid& g_;
    std::vector<cplx> hat_;
};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]) / n;
        my += std::log(y[i]) / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    return sxy / sxx;
}

struct Check {
    std::string name;
    std::function<double(const Sample&)> lhs, rhs;
    double predicted;
};

}  // namespace

double mixed_norm_xv(const std::vector<std::vector<double>>& f, double p, double q) {
    std::vector<double> inner;
    for (const auto& row : f) inner.push_back(lp_norm(row, p, 1.0));
    return lp_norm(inner, q, 1.0);
}

double mixed_norm_vx(const std::vector<std::vector<double>>& f, double p, double q) {
    if (f.empty()) return 0.0;
    const std::size_t nv = f[0].size();
    std::vector<double> inner(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<double> col;
        for (const auto& row : f) col.push_back(row.at(v));
        inner[v] = lp_norm(col, q, 1.0);
    }
    return lp_norm(inner, p, 1.0);
}

RieszReport riesz_checks(double s, const RieszParams& P) {
    if (!(s > 0.0 && s < 1.5)) throw DomainError("riesz_checks needs 0 < s < 3/2");
    if (P.scales.size() < 2) throw DomainError("riesz_checks needs at least two scales");
    const SpatialGrid g(P.box_length, P.n, {true, true, true});

    // Dilation exponents for f_lambda = g(x / lambda) in 3-D:
    //   ||Lambda^a f||_{L^p} ~ lambda^{3/p - a}, ||grad^k f||_{L^p} ~ lambda^{3/p - k}.
    std::vector<Check> checks;
    {
        const double p = 2.0, q = 1.0 / (0.5 - s / 3.0);
        if (s < 1.5)
            checks.push_back({"riesz L^p-L^q: ||Lambda^-s f||_{L^q} <= ||f||_{L^p}",
                              [=](const Sample& x) { return x.lambda_lp(-s, q); },
                              [=](const Sample& x) { return x.lambda_lp(0.0, p); }, 3.0 / p});
    }
    // Gagliardo-Nirenberg: ||f||_{L^6} <= ||f||^{1/2} ||grad^2 f||^{1/2}, ||f||_inf <= ||f||^{1/4} ||grad^2 f||^{3/4}
    checks.push_back({"gagliardo-nirenberg L^6 (k=0, l=0, m=2)", [](const Sample& x) { return x.grad_lp(0, 6.0); },
                      [](const Sample& x) { return std::sqrt(x.grad_l2(0) * x.grad_l2(2)); }, 0.5});
    checks.push_back({"gagliardo-nirenberg L^inf (k=0, l=0, m=2)",
                      [](const Sample& x) { return x.grad_lp(0, INFINITY); },
                      [](const Sample& x) { return std::pow(x.grad_l2(0), 0.25) * std::pow(x.grad_l2(2), 0.75); },
                      0.0});
    checks.push_back({"sobolev L^{12/(3+2s)} by Lambda^{3/4-s/2}",
                      [=](const Sample& x) { return x.grad_lp(0, 12.0 / (3.0 + 2.0 * s)); },
                      [=](const Sample& x) { return x.lambda_l2(0.75 - 0.5 * s); }, 1.5 - (0.75 - 0.5 * s)});
    checks.push_back({"sobolev L^{3/s} by Lambda^{3/2-s}", [=](const Sample& x) { return x.grad_lp(0, 3.0 / s); },
                      [=](const Sample& x) { return x.lambda_l2(1.5 - s); }, s});
    for (int k = 0; k <= 2; ++k) {
        const double den = k + 1 + s;
        const double neg = 1.5 + s, top = 1.5 - (k + 1);
        if (k >= 1) {
            const double a = (2.0 * k - 1) / (2.0 * den), b = (3.0 + 2 * s) / (2.0 * den);
            checks.push_back({"interpolation L^inf k=" + std::to_string(k),
                              [](const Sample& x) { return x.grad_lp(0, INFINITY); },
                              [=](const Sample& x) {
                                  return std::pow(x.lambda_l2(-s), a) * std::pow(x.grad_l2(k + 1), b);
                              },
                              a * neg + b * top});
        }
        for (int j = 0; j <= k; ++j) {
            const double a6 = (k - j) / den, b6 = (j + s + 1) / den;
            checks.push_back({"interpolation L^6 k=" + std::to_string(k) + " j=" + std::to_string(j),
                              [=](const Sample& x) { return x.grad_lp(j, 6.0); },
                              [=](const Sample& x) {
                                  return std::pow(x.lambda_l2(-s), a6) * std::pow(x.grad_l2(k + 1), b6);
                              },
                              a6 * neg + b6 * top});
            const double a3 = (2.0 * k - 2 * j + 1) / (2.0 * den), b3 = (2.0 * j + 2 * s + 1) / (2.0 * den);
            checks.push_back({"interpolation L^3 k=" + std::to_string(k) + " j=" + std::to_string(j),
                              [=](const Sample& x) { return x.grad_lp(j, 3.0); },
                              [=](const Sample& x) {
                                  return std::pow(x.lambda_l2(-s), a3) * std::pow(x.grad_l2(k + 1), b3);
                              },
                              a3 * neg + b3 * top});
        }
    }

    std::vector<std::vector<double>> lhs(checks.size()), rhs(checks.size());
    for (double lam : P.scales) {
        const Sample smp(g, lam);
        for (std::size_t c = 0; c < checks.size(); ++c) {
            lhs[c].push_back(checks[c].lhs(smp));
            rhs[c].push_back(checks[c].rhs(smp));
        }
    }

    RieszReport rep;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        RieszItem it;
        it.name = checks[c].name;
        it.lhs_slope = slope(P.scales, lhs[c]);
        it.rhs_slope = slope(P.scales, rhs[c]);
        it.predicted_slope = checks[c].predicted;
        for (std::size_t i = 0; i < P.scales.size(); ++i) it.max_ratio = std::max(it.max_ratio, lhs[c][i] / rhs[c][i]);
        it.pass = std::abs(it.lhs_slope - it.rhs_slope) <= P.slope_tol && std::isfinite(it.max_ratio);
        rep.items.push_back(it);
    }

    std::mt19937_64 rng(P.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::vector<double>> f(48, std::vector<double>(40));
    for (auto& row : f)
        for (double& x : row) x = U(rng);
    const double ps[] = {1.0, 2.0, 3.0, INFINITY};
    for (double p : ps)
        for (double q : ps) {
            if (q < p) continue;
            MinkowskiItem m{p, q, mixed_norm_xv(f, p, q), mixed_norm_vx(f, p, q), false};
            m.pass = p == q ? std::abs(m.lhs - m.rhs) <= 1e-12 * m.rhs : m.lhs <= m.rhs * (1.0 + 1e-12);
            rep.minkowski.push_back(m);
        }
    return rep;
}

}  // namespace vml
