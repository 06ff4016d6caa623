#include "vml/evolve/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "vml/error.hpp"
#include "vml/landau/operator.hpp"

namespace vml {

namespace {

std::vector<double> apply_channel(const std::vector<double>& y, bool sum_channel, const CollisionTables& t) {
    return sum_channel ? apply_L_sum(y, t) : apply_L_diff(y, t);
}

bool all_zero(const std::vector<double>& y) {
    for (double v : y)
        if (v != 0.0) return false;
    return true;
}

Eigen::MatrixXd cayley(const Eigen::MatrixXd& L, double tau) {
    const auto I = Eigen::MatrixXd::Identity(L.rows(), L.cols());
    const Eigen::MatrixXd A = I + tau * L;
    const Eigen::MatrixXd B = I - tau * L;
    return A.partialPivLu().solve(B);
}

}  // namespace

double CollisionPropagator::advance(VelocityPair& y) const {
    const std::size_t N = y.size();
    std::vector<double> s(N), d(N);
    for (std::size_t p = 0; p < N; ++p) {
        s[p] = y.plus[p] + y.minus[p];
        d[p] = y.plus[p] - y.minus[p];
    }
    const double ds = advance_channel(s, true);
    const double dd = advance_channel(d, false);
    for (std::size_t p = 0; p < N; ++p) {
        y.plus[p] = 0.5 * (s[p] + d[p]);
        y.minus[p] = 0.5 * (s[p] - d[p]);
    }
    // <Lf, f> = (<L_s S, S> + <L_d D, D>) / 2 with S = f+ + f-, D = f+ - f-.
    return ds + dd;
}

std::vector<double> CollisionPropagator::advance_batch(std::vector<VelocityPair>& ys) const {
    std::vector<double> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = advance(ys[i]);
    return out;
}

std::vector<double> MatrixPropagator::step_columns(const Eigen::MatrixXd& Y0, Eigen::MatrixXd& Y1, int channel) const {
    Y1.noalias() = step_[channel] * Y0;
    std::vector<double> d(static_cast<std::size_t>(Y0.cols()), 0.0);
    for (Eigen::Index k = 0; k < Y0.cols(); ++k) {
        double acc = 0.0;
        for (Eigen::Index r = 0; r < Y0.rows(); ++r) {
            const double a = Y0(r, k), b = Y1(r, k);
            acc += weight_[static_cast<std::size_t>(r)] * (a + b) * (a - b);
        }
        d[static_cast<std::size_t>(k)] = acc / (4.0 * tau_);
    }
    return d;
}

double MatrixPropagator::advance_channel(std::vector<double>& y, bool sum_channel) const {
    if (all_zero(y)) return 0.0;
    Eigen::MatrixXd Y0(static_cast<Eigen::Index>(weight_.size()), 1), Y1;
    gather(y, Y0.data());
    const double d = step_columns(Y0, Y1, sum_channel ? 0 : 1)[0];
    scatter(Y1.data(), y);
    return d;
}

std::vector<double> MatrixPropagator::advance_batch(std::vector<VelocityPair>& ys) const {
    const auto K = static_cast<Eigen::Index>(ys.size());
    const auto R = static_cast<Eigen::Index>(weight_.size());
    std::vector<double> out(ys.size(), 0.0);
    if (K == 0) return out;
    const std::size_t N = ys[0].size();
    Eigen::MatrixXd S0(R, K), D0(R, K), S1, D1;
    std::vector<double> s(N), d(N);
    for (Eigen::Index k = 0; k < K; ++k) {
        const VelocityPair& y = ys[static_cast<std::size_t>(k)];
        for (std::size_t p = 0; p < N; ++p) {
            s[p] = y.plus[p] + y.minus[p];
            d[p] = y.plus[p] - y.minus[p];
        }
        gather(s, S0.col(k).data());
        gather(d, D0.col(k).data());
    }
    const auto ds = step_columns(S0, S1, 0);
    const auto dd = step_columns(D0, D1, 1);
    for (Eigen::Index k = 0; k < K; ++k) {
        VelocityPair& y = ys[static_cast<std::size_t>(k)];
        scatter(S1.col(k).data(), s);
        scatter(D1.col(k).data(), d);
        for (std::size_t p = 0; p < N; ++p) {
            y.plus[p] = 0.5 * (s[p] + d[p]);
            y.minus[p] = 0.5 * (s[p] - d[p]);
        }
        out[static_cast<std::size_t>(k)] = ds[static_cast<std::size_t>(k)] + dd[static_cast<std::size_t>(k)];
    }
    return out;
}

// Orbits of (j, k) under the reflections of each index and their swap.
ReducedPropagator::ReducedPropagator(std::shared_ptr<const CollisionTables> tables, double tau)
    : MatrixPropagator(tau), tables_(std::move(tables)) {
    const VelocityGrid& g = tables_->grid();
    const int n = g.n();
    if (n % 2 != 0) throw DomainError("reduced propagator needs an even n_v");
    const int half = n / 2;
    const std::size_t M = static_cast<std::size_t>(half) * (half + 1) / 2;
    auto fold = [&](int j) { return j < half ? j : n - 1 - j; };
    orbit_.resize(g.size());
    rep_.assign(static_cast<std::size_t>(n) * M, 0);
    weight_.assign(rep_.size(), 0.0);
    for (std::size_t p = 0; p < g.size(); ++p) {
        const auto [i, j, k] = g.unflatten(p);
        int a = fold(j), b = fold(k);
        if (a > b) std::swap(a, b);
        const std::size_t r = static_cast<std::size_t>(i) * M + static_cast<std::size_t>(b) * (b + 1) / 2 + a;
        orbit_[p] = r;
        weight_[r] += 1.0;
        rep_[r] = g.index(i, a, b);
    }
    const std::size_t R = rep_.size();
    for (int c = 0; c < 2; ++c) {
        Eigen::MatrixXd L(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(R));
        std::vector<double> e(g.size());
        for (std::size_t r = 0; r < R; ++r) {
            for (std::size_t p = 0; p < g.size(); ++p) e[p] = orbit_[p] == r ? 1.0 : 0.0;
            const auto col = apply_channel(e, c == 0, *tables_);
            for (std::size_t q = 0; q < R; ++q) L(q, r) = col[rep_[q]];
        }
        step_[c] = cayley(L, tau_);
    }
}

void ReducedPropagator::gather(const std::vector<double>& y, double* out) const {
    for (std::size_t r = 0; r < rep_.size(); ++r) out[r] = y[rep_[r]];
}

void ReducedPropagator::scatter(const double* in, std::vector<double>& y) const {
    for (std::size_t p = 0; p < y.size(); ++p) y[p] = in[orbit_[p]];
}

DensePropagator::DensePropagator(std::shared_ptr<const CollisionTables> tables, double tau)
    : MatrixPropagator(tau), tables_(std::move(tables)) {
    const VelocityGrid& g = tables_->grid();
    if (g.n() > kDenseMaxN)
        throw DomainError("dense collision propagator is limited to n_v <= " + std::to_string(kDenseMaxN));
    const auto N = static_cast<Eigen::Index>(g.size());
    weight_.assign(g.size(), 1.0);
    for (int c = 0; c < 2; ++c) {
        Eigen::MatrixXd L(N, N);
        std::vector<double> e(g.size(), 0.0);
        for (Eigen::Index r = 0; r < N; ++r) {
            e[r] = 1.0;
            const auto col = apply_channel(e, c == 0, *tables_);
            e[r] = 0.0;
            for (Eigen::Index q = 0; q < N; ++q) L(q, r) = col[q];
        }
        step_[c] = cayley(L, tau_);
    }
}

void DensePropagator::gather(const std::vector<double>& y, double* out) const {
    std::copy(y.begin(), y.end(), out);
}

void DensePropagator::scatter(const double* in, std::vector<double>& y) const {
    std::copy(in, in + y.size(), y.begin());
}

CgPropagator::CgPropagator(std::shared_ptr<const CollisionTables> tables, double tau, double tol, int max_iter)
    : CollisionPropagator(tau), tables_(std::move(tables)), tol_(tol), max_iter_(max_iter) {
    // Diagonal of 2 sum_c d_half_c^T sigma_cc d_half_c, which scales like <v>^{gamma+2} / h^2.
    const VelocityGrid& g = tables_->grid();
    const int n = g.n();
    const std::size_t N = g.size();
    const auto sigma = tables_->sigma();
    const AxisOperator& D = tables_->d_half();
    precond_.assign(N, 1.0);
    for (std::size_t p = 0; p < N; ++p) {
        const auto idx = g.unflatten(p);
        double acc = 0.0;
        for (int c = 0; c < 3; ++c) {
            for (int r = 0; r < n; ++r) {
                const double d = D(r, idx[c]);
                if (d == 0.0) continue;
                auto jdx = idx;
                jdx[c] = r;
                acc += d * d * sigma[c * N + g.index(jdx[0], jdx[1], jdx[2])];
            }
        }
        precond_[p] = 1.0 + tau_ * 2.0 * acc;
    }
}

std::vector<double> CgPropagator::apply(const std::vector<double>& y, bool sum_channel) const {
    auto Ly = apply_channel(y, sum_channel, *tables_);
    for (std::size_t p = 0; p < y.size(); ++p) Ly[p] = y[p] + tau_ * Ly[p];
    return Ly;
}

double CgPropagator::advance_channel(std::vector<double>& y, bool sum_channel) const {
    last_iterations_ = 0;
    if (all_zero(y)) return 0.0;
    const std::size_t N = y.size();
    const auto Ly0 = apply_channel(y, sum_channel, *tables_);
    std::vector<double> b(N);
    for (std::size_t p = 0; p < N; ++p) b[p] = y[p] - tau_ * Ly0[p];
    double bnorm = 0.0;
    for (double v : b) bnorm += v * v;
    bnorm = std::sqrt(bnorm);

    std::vector<double> x = y;
    auto Ax = apply(x, sum_channel);
    std::vector<double> r(N), z(N), p(N);
    double rz = 0.0, rnorm = 0.0;
    for (std::size_t q = 0; q < N; ++q) {
        r[q] = b[q] - Ax[q];
        z[q] = r[q] / precond_[q];
        p[q] = z[q];
        rz += r[q] * z[q];
        rnorm += r[q] * r[q];
    }
    rnorm = std::sqrt(rnorm);
    int it = 0;
    while (rnorm > tol_ * bnorm && bnorm > 0.0) {
        if (it >= max_iter_)
            throw ConvergenceError("collision solve did not converge in " + std::to_string(max_iter_) +
                                       " iterations (relative residual " + std::to_string(rnorm / bnorm) + ")",
                                   it, rnorm / bnorm);
        const auto Ap = apply(p, sum_channel);
        double pAp = 0.0;
        for (std::size_t q = 0; q < N; ++q) pAp += p[q] * Ap[q];
        const double alpha = rz / pAp;
        double rz_new = 0.0;
        rnorm = 0.0;
        for (std::size_t q = 0; q < N; ++q) {
            x[q] += alpha * p[q];
            r[q] -= alpha * Ap[q];
            z[q] = r[q] / precond_[q];
            rz_new += r[q] * z[q];
            rnorm += r[q] * r[q];
        }
        rnorm = std::sqrt(rnorm);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t q = 0; q < N; ++q) p[q] = z[q] + beta * p[q];
        ++it;
    }
    last_iterations_ = it;

    std::vector<double> mid(N);
    for (std::size_t q = 0; q < N; ++q) mid[q] = 0.5 * (y[q] + x[q]);
    const auto Lm = apply_channel(mid, sum_channel, *tables_);
    double diss = 0.0;
    for (std::size_t q = 0; q < N; ++q) diss += Lm[q] * mid[q];
    y = std::move(x);
    return diss;
}

bool is_axisymmetric(const DistributionPair& f, const VelocityGrid& g, double tol) {
    const int n = g.n();
    double scale = 0.0, worst = 0.0;
    for (int s = 0; s < 2; ++s)
        for (std::size_t x = 0; x < f.n_x(); ++x) {
            const auto b = f.block(s, x);
            for (std::size_t p = 0; p < g.size(); ++p) {
                const auto [i, j, k] = g.unflatten(p);
                scale = std::max(scale, std::abs(b[p]));
                const cplx v = b[p];
                worst = std::max(worst, std::abs(v - b[g.index(i, n - 1 - j, k)]));
                worst = std::max(worst, std::abs(v - b[g.index(i, j, n - 1 - k)]));
                worst = std::max(worst, std::abs(v - b[g.index(i, k, j)]));
            }
        }
    return worst <= tol * scale;
}

std::unique_ptr<CollisionPropagator> make_propagator(std::shared_ptr<const CollisionTables> tables, double tau,
                                                     CollisionSolver solver, double cg_tol, int cg_max_iter) {
    switch (solver) {
        case CollisionSolver::reduced: return std::make_unique<ReducedPropagator>(std::move(tables), tau);
        case CollisionSolver::dense: return std::make_unique<DensePropagator>(std::move(tables), tau);
        case CollisionSolver::cg:
        case CollisionSolver::automatic:
            return std::make_unique<CgPropagator>(std::move(tables), tau, cg_tol, cg_max_iter);
    }
    return nullptr;
}

}  // namespace vml
