#include "vml/macro_micro/projection.hpp"

#include <cmath>

#include "vml/error.hpp"

namespace vml {

MacroFields::MacroFields(std::size_t n) : a_plus(n), a_minus(n), c(n), b{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)} {}

namespace {

template <class T>
T dot(const std::vector<double>& q, std::span<const T> f) {
    T acc{};
    for (std::size_t p = 0; p < q.size(); ++p) acc += q[p] * f[p];
    return acc;
}

}  // namespace

Projection::Projection(const VelocityGrid& grid) : grid_(grid) {
    const std::size_t N = grid.size();
    const auto sq = grid.sqrt_mu();
    const auto v2 = grid.speed2();
    for (auto& e : e_) e.resize(N);
    for (std::size_t p = 0; p < N; ++p) {
        e_[0][p] = sq[p];
        for (int i = 0; i < 3; ++i) e_[1 + i][p] = grid.v(i)[p] * sq[p];
        e_[4][p] = (v2[p] - 3.0) * sq[p];
    }
    const double w = grid.weight();
    auto ip = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t p = 0; p < N; ++p) acc += a[p] * b[p];
        return acc * w;
    };
    // Modified Gram-Schmidt, two passes.
    std::array<std::array<double, 5>, 5> R{};
    for (int k = 0; k < 5; ++k) {
        std::vector<double> u = e_[k];
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) {
                const double r = ip(q_[j], u);
                R[j][k] += r;
                for (std::size_t p = 0; p < N; ++p) u[p] -= r * q_[j][p];
            }
        const double nrm = std::sqrt(ip(u, u));
        if (!(nrm > 0.0)) throw DomainError("null-space basis is degenerate on this grid");
        R[k][k] = nrm;
        for (double& x : u) x /= nrm;
        q_[k] = std::move(u);
    }
    // Back substitution for R^{-1}.
    for (int col = 0; col < 5; ++col)
        for (int row = 4; row >= 0; --row) {
            double acc = row == col ? 1.0 : 0.0;
            for (int j = row + 1; j < 5; ++j) acc -= R[row][j] * rinv_[j][col];
            rinv_[row][col] = acc / R[row][row];
        }
}

template <class T>
MacroCoefficients<T> Projection::coeffs(std::span<const T> fp, std::span<const T> fm) const {
    const std::size_t N = grid_.size();
    if (fp.size() != N || fm.size() != N) throw ShapeError("distribution block does not match velocity grid");
    std::vector<T> s(N), d(N);
    for (std::size_t p = 0; p < N; ++p) {
        s[p] = 0.5 * (fp[p] + fm[p]);
        d[p] = 0.5 * (fp[p] - fm[p]);
    }
    const double w = grid_.weight();
    std::array<T, 5> qs{};
    for (int k = 0; k < 5; ++k) qs[k] = w * dot<T>(q_[k], std::span<const T>(s));
    std::array<T, 5> an{};
    for (int r = 0; r < 5; ++r)
        for (int k = r; k < 5; ++k) an[r] += rinv_[r][k] * qs[k];
    const T ad = w * dot<T>(q_[0], std::span<const T>(d)) * rinv_[0][0];
    MacroCoefficients<T> m;
    m.a_plus = an[0] + ad;
    m.a_minus = an[0] - ad;
    for (int i = 0; i < 3; ++i) m.b[i] = an[1 + i];
    m.c = an[4];
    return m;
}

template <class T>
void Projection::build(const MacroCoefficients<T>& m, std::span<T> fp, std::span<T> fm) const {
    const std::size_t N = grid_.size();
    if (fp.size() != N || fm.size() != N) throw ShapeError("distribution block does not match velocity grid");
    const T alpha = 0.5 * (m.a_plus + m.a_minus);
    const T ad = 0.5 * (m.a_plus - m.a_minus);
    for (std::size_t p = 0; p < N; ++p) {
        T s = alpha * e_[0][p] + m.c * e_[4][p];
        for (int i = 0; i < 3; ++i) s += m.b[i] * e_[1 + i][p];
        const T d = ad * e_[0][p];
        fp[p] = s + d;
        fm[p] = s - d;
    }
}

MacroCoefficients<double> Projection::coefficients(std::span<const double> fp, std::span<const double> fm) const {
    return coeffs<double>(fp, fm);
}
MacroCoefficients<cplx> Projection::coefficients(std::span<const cplx> fp, std::span<const cplx> fm) const {
    return coeffs<cplx>(fp, fm);
}
void Projection::reconstruct(const MacroCoefficients<double>& m, std::span<double> fp, std::span<double> fm) const {
    build<double>(m, fp, fm);
}
void Projection::reconstruct(const MacroCoefficients<cplx>& m, std::span<cplx> fp, std::span<cplx> fm) const {
    build<cplx>(m, fp, fm);
}

VelocityPair Projection::project(const VelocityPair& f) const {
    VelocityPair out(grid_.size());
    reconstruct(coefficients(f.plus, f.minus), out.plus, out.minus);
    return out;
}

VelocityPair Projection::micro(const VelocityPair& f) const {
    VelocityPair out = project(f);
    for (std::size_t p = 0; p < out.size(); ++p) {
        out.plus[p] = f.plus[p] - out.plus[p];
        out.minus[p] = f.minus[p] - out.minus[p];
    }
    return out;
}

std::vector<VelocityPair> Projection::null_basis() const {
    const std::size_t N = grid_.size();
    const auto sq = grid_.sqrt_mu();
    const auto v2 = grid_.speed2();
    std::vector<VelocityPair> out(6, VelocityPair(N));
    for (std::size_t p = 0; p < N; ++p) {
        out[0].plus[p] = sq[p];
        out[1].minus[p] = sq[p];
        for (int i = 0; i < 3; ++i) out[2 + i].plus[p] = out[2 + i].minus[p] = grid_.v(i)[p] * sq[p];
        out[5].plus[p] = out[5].minus[p] = v2[p] * sq[p];
    }
    return out;
}

MacroFields macro_fields(const DistributionPair& f, const Projection& proj) {
    if (f.n_v() != proj.grid().size()) throw ShapeError("distribution does not match velocity grid");
    MacroFields m(f.n_x());
    for (std::size_t x = 0; x < f.n_x(); ++x) {
        const auto c = proj.coefficients(f.block(0, x), f.block(1, x));
        m.a_plus[x] = c.a_plus;
        m.a_minus[x] = c.a_minus;
        for (int i = 0; i < 3; ++i) m.b[i][x] = c.b[i];
        m.c[x] = c.c;
    }
    return m;
}

std::pair<DistributionPair, MacroFields> project_P(const DistributionPair& f, const Projection& proj) {
    MacroFields m = macro_fields(f, proj);
    DistributionPair pf(f.n_x(), f.n_v(), f.space());
    for (std::size_t x = 0; x < f.n_x(); ++x) {
        MacroCoefficients<cplx> c;
        c.a_plus = m.a_plus[x];
        c.a_minus = m.a_minus[x];
        for (int i = 0; i < 3; ++i) c.b[i] = m.b[i][x];
        c.c = m.c[x];
        proj.reconstruct(c, pf.block(0, x), pf.block(1, x));
    }
    return {std::move(pf), std::move(m)};
}

DistributionPair micro_part(const DistributionPair& f, const Projection& proj) {
    DistributionPair out = project_P(f, proj).first;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = f.data()[i] - out.data()[i];
    return out;
}

}  // namespace vml
