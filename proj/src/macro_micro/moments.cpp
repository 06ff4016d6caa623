#include "vml/macro_micro/moments.hpp"

#include "vml/error.hpp"

namespace vml {

namespace {
constexpr int kPairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};

template <class T>
std::array<T, 6> A_of(std::span<const T> g, const VelocityGrid& grid) {
    std::array<T, 6> out{};
    const auto sq = grid.sqrt_mu();
    for (std::size_t p = 0; p < grid.size(); ++p)
        for (int c = 0; c < 6; ++c) {
            const int m = kPairs[c][0], j = kPairs[c][1];
            const double poly = grid.v(m)[p] * grid.v(j)[p] - (m == j ? 1.0 : 0.0);
            out[c] += poly * sq[p] * g[p];
        }
    for (auto& x : out) x *= grid.weight();
    return out;
}

template <class T>
std::array<T, 3> B_of(std::span<const T> g, const VelocityGrid& grid) {
    std::array<T, 3> out{};
    const auto sq = grid.sqrt_mu();
    const auto v2 = grid.speed2();
    for (std::size_t p = 0; p < grid.size(); ++p)
        for (int j = 0; j < 3; ++j) out[j] += (v2[p] - 5.0) * grid.v(j)[p] * sq[p] * g[p];
    for (auto& x : out) x *= 0.1 * grid.weight();
    return out;
}

template <class T>
std::array<T, 3> J_of(std::span<const T> fp, std::span<const T> fm, const VelocityGrid& grid) {
    std::array<T, 3> out{};
    const auto sq = grid.sqrt_mu();
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const T d = fp[p] - fm[p];
        for (int j = 0; j < 3; ++j) out[j] += grid.v(j)[p] * sq[p] * d;
    }
    for (auto& x : out) x *= grid.weight();
    return out;
}

}  // namespace

std::array<double, 6> moment_A(std::span<const double> g, const VelocityGrid& grid) {
    if (g.size() != grid.size()) throw ShapeError("velocity field does not match grid");
    return A_of<double>(g, grid);
}

std::array<double, 3> moment_B(std::span<const double> g, const VelocityGrid& grid) {
    if (g.size() != grid.size()) throw ShapeError("velocity field does not match grid");
    return B_of<double>(g, grid);
}

std::array<std::vector<cplx>, 3> current(const DistributionPair& f, const VelocityGrid& grid) {
    if (f.n_v() != grid.size()) throw ShapeError("distribution does not match velocity grid");
    std::array<std::vector<cplx>, 3> j;
    for (auto& c : j) c.resize(f.n_x());
    for (std::size_t x = 0; x < f.n_x(); ++x) {
        const auto jx = J_of<cplx>(f.block(0, x), f.block(1, x), grid);
        for (int i = 0; i < 3; ++i) j[i][x] = jx[i];
    }
    return j;
}

MomentSet moments(const DistributionPair& f, const Projection& proj) {
    const VelocityGrid& grid = proj.grid();
    if (f.n_v() != grid.size()) throw ShapeError("distribution does not match velocity grid");
    const std::size_t nx = f.n_x();
    MomentSet m;
    for (auto& a : m.A) a.resize(nx);
    for (auto& b : m.Bv) b.resize(nx);
    for (auto& g : m.G) g.resize(nx);
    const DistributionPair micro = micro_part(f, proj);
    std::vector<cplx> sum(grid.size());
    for (std::size_t x = 0; x < nx; ++x) {
        const auto fp = f.block(0, x);
        const auto fm = f.block(1, x);
        for (std::size_t p = 0; p < sum.size(); ++p) sum[p] = fp[p] + fm[p];
        const auto A = A_of<cplx>(std::span<const cplx>(sum), grid);
        const auto B = B_of<cplx>(std::span<const cplx>(sum), grid);
        const auto G = J_of<cplx>(micro.block(0, x), micro.block(1, x), grid);
        for (int c = 0; c < 6; ++c) m.A[c][x] = A[c];
        for (int j = 0; j < 3; ++j) {
            m.Bv[j][x] = B[j];
            m.G[j][x] = G[j];
        }
    }
    return m;
}

}  // namespace vml
