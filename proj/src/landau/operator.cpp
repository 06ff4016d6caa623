#include "vml/landau/operator.hpp"

#include <algorithm>

#include "vml/error.hpp"
#include "vml/simd/kernels.hpp"

namespace vml {

namespace {

void check(std::span<const double> f, const CollisionTables& t) {
    if (f.size() != t.size()) throw ShapeError("velocity field does not match collision tables");
}

void gradient(const AxisOperator& op, const double* f, double* out, std::size_t N) {
    for (int c = 0; c < 3; ++c) op.apply(f, out + c * N, c);
}

// out = sum_c op_c J_c
void divergence(const AxisOperator& op, const double* J, double* out, std::size_t N) {
    std::fill(out, out + N, 0.0);
    for (int c = 0; c < 3; ++c) op.apply(J + c * N, out, c, true);
}

// 2 d^T (sigma d f), minus 2 d^T mu^{1/2} Phi*(mu^{1/2} d f) when nonlocal.
std::vector<double> channel(std::span<const double> f, const CollisionTables& t, bool nonlocal) {
    check(f, t);
    const std::size_t N = t.size();
    const auto& K = simd::kernels();
    std::vector<double> a(3 * N), flux(3 * N);
    gradient(t.d_half(), f.data(), a.data(), N);
    K.sym3_matvec(N, t.sigma().data(), a.data(), flux.data());
    if (nonlocal) {
        const double* sq = t.grid().sqrt_mu().data();
        std::vector<double> b(3 * N), kb(3 * N);
        for (int c = 0; c < 3; ++c) K.mul(N, sq, a.data() + c * N, b.data() + c * N);
        t.convolver().convolve_vector(b, kb);
        for (int c = 0; c < 3; ++c) {
            K.mul(N, sq, kb.data() + c * N, b.data() + c * N);
            K.axpy(N, -1.0, b.data() + c * N, flux.data() + c * N);
        }
    }
    std::vector<double> out(N);
    divergence(t.d_half_t(), flux.data(), out.data(), N);
    for (double& x : out) x *= 2.0;
    return out;
}

}  // namespace

void folded_gradient(std::span<const double> f, const CollisionTables& t, std::span<double> out) {
    check(f, t);
    const std::size_t N = t.size();
    if (out.size() != 3 * N) throw ShapeError("gradient output must hold 3 components");
    gradient(t.d_half(), f.data(), out.data(), N);
    for (int c = 0; c < 3; ++c) {
        const auto v = t.grid().v(c);
        for (std::size_t p = 0; p < N; ++p) out[c * N + p] -= 0.5 * v[p] * f[p];
    }
}

std::vector<double> apply_Q(std::span<const double> F, std::span<const double> G, const CollisionTables& t) {
    check(F, t);
    check(G, t);
    const std::size_t N = t.size();
    const auto& K = simd::kernels();
    std::vector<double> A(6 * N), dF(3 * N), B(3 * N), dG(3 * N), J(3 * N);
    t.convolver().convolve_scalar(F, A);
    gradient(t.d_full(), F.data(), dF.data(), N);
    t.convolver().convolve_vector(dF, B);
    gradient(t.d_full(), G.data(), dG.data(), N);
    K.sym3_matvec(N, A.data(), dG.data(), J.data());
    for (int c = 0; c < 3; ++c)
        for (std::size_t p = 0; p < N; ++p) J[c * N + p] -= G[p] * B[c * N + p];
    std::vector<double> out(N);
    divergence(t.dT(), J.data(), out.data(), N);
    for (double& x : out) x = -x;
    return out;
}

std::vector<double> apply_L_sum(std::span<const double> s, const CollisionTables& t) { return channel(s, t, true); }

std::vector<double> apply_L_diff(std::span<const double> d, const CollisionTables& t) {
    return channel(d, t, false);
}

VelocityPair apply_L(const VelocityPair& f, const CollisionTables& t) {
    const std::size_t N = t.size();
    check(f.plus, t);
    check(f.minus, t);
    std::vector<double> s(N), d(N);
    for (std::size_t p = 0; p < N; ++p) {
        s[p] = f.plus[p] + f.minus[p];
        d[p] = f.plus[p] - f.minus[p];
    }
    const auto ls = apply_L_sum(s, t);
    const auto ld = apply_L_diff(d, t);
    VelocityPair out(N);
    for (std::size_t p = 0; p < N; ++p) {
        out.plus[p] = 0.5 * (ls[p] + ld[p]);
        out.minus[p] = 0.5 * (ls[p] - ld[p]);
    }
    return out;
}

VelocityPair apply_Gamma(const VelocityPair& f, const VelocityPair& g, const CollisionTables& t) {
    const std::size_t N = t.size();
    check(f.plus, t);
    check(f.minus, t);
    check(g.plus, t);
    check(g.minus, t);
    const auto& K = simd::kernels();
    const double* sq = t.grid().sqrt_mu().data();

    // Field partner mu^{1/2}(g+ + g-) and its folded gradient.
    std::vector<double> sg(N), partner(N);
    for (std::size_t p = 0; p < N; ++p) sg[p] = g.plus[p] + g.minus[p];
    K.mul(N, sq, sg.data(), partner.data());
    std::vector<double> A(6 * N), grad(3 * N), B(3 * N);
    t.convolver().convolve_scalar(partner, A);
    gradient(t.d_half(), sg.data(), grad.data(), N);
    for (int c = 0; c < 3; ++c) K.mul(N, sq, grad.data() + c * N, grad.data() + c * N);
    t.convolver().convolve_vector(grad, B);

    VelocityPair out(N);
    std::vector<double> a(3 * N), J(3 * N);
    for (int s = 0; s < 2; ++s) {
        const auto& fs = f[s];
        gradient(t.d_half(), fs.data(), a.data(), N);
        K.sym3_matvec(N, A.data(), a.data(), J.data());
        for (int c = 0; c < 3; ++c)
            for (std::size_t p = 0; p < N; ++p) J[c * N + p] -= fs[p] * B[c * N + p];
        divergence(t.d_half_t(), J.data(), out[s].data(), N);
        for (double& x : out[s]) x = -x;
    }
    return out;
}

double pair_inner(const VelocityPair& a, const VelocityPair& b, const VelocityGrid& grid) {
    const auto& K = simd::kernels();
    const std::size_t N = grid.size();
    return grid.weight() * (K.dot(N, a.plus.data(), b.plus.data()) + K.dot(N, a.minus.data(), b.minus.data()));
}

double form_L(const VelocityPair& f, const VelocityPair& g, const CollisionTables& t) {
    return pair_inner(apply_L(f, t), g, t.grid());
}

}  // namespace vml
