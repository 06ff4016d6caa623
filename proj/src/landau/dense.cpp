#include "vml/landau/dense.hpp"

#include <string>
#include <vector>

#include "vml/error.hpp"

namespace vml {

namespace {

// Sparse rows of d_half along one axis, lifted to the 3-D index space.
struct SparseRow {
    std::vector<std::pair<std::size_t, double>> entries;
};

std::vector<SparseRow> lift(const AxisOperator& op, const VelocityGrid& g, int axis) {
    const int n = g.n();
    std::vector<SparseRow> rows(g.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t p = g.index(i, j, k);
                const int r = axis == 0 ? i : (axis == 1 ? j : k);
                for (int c = 0; c < n; ++c) {
                    const double w = op(r, c);
                    if (w == 0.0) continue;
                    const std::size_t q = axis == 0 ? g.index(c, j, k) : (axis == 1 ? g.index(i, c, k) : g.index(i, j, c));
                    rows[p].entries.emplace_back(q, w);
                }
            }
    return rows;
}

// out += Da^T M Db for sparse Da, Db and dense M.
void add_sandwich(const std::vector<SparseRow>& Da, const Eigen::MatrixXd& M, const std::vector<SparseRow>& Db,
                  Eigen::MatrixXd& out) {
    const std::size_t N = Da.size();
    Eigen::MatrixXd MD = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t q = 0; q < N; ++q)
        for (const auto& [c, w] : Db[q].entries) MD.col(c) += w * M.col(q);
    for (std::size_t p = 0; p < N; ++p)
        for (const auto& [c, w] : Da[p].entries) out.row(c) += w * MD.row(p);
}

}  // namespace

DenseChannels assemble_L_channels(const CollisionTables& t) {
    const VelocityGrid& g = t.grid();
    if (g.n() > 12) throw DomainError("dense assembly is limited to n_v <= 12, got " + std::to_string(g.n()));
    const std::size_t N = g.size();
    const double w = g.weight();
    const double self = self_cell_value(g.spacing(), t.gamma()) * w;
    const auto mu = g.mu();
    const auto sq = g.sqrt_mu();

    std::array<std::vector<SparseRow>, 3> d;
    for (int a = 0; a < 3; ++a) d[a] = lift(t.d_half(), g, a);

    // Pairwise kernel, sigma by direct summation.
    std::array<std::array<Eigen::MatrixXd, 3>, 3> phi;
    for (auto& row : phi)
        for (auto& m : row) m = Eigen::MatrixXd::Zero(N, N);
    std::vector<Mat3> sigma(N, Mat3{});
    for (std::size_t p = 0; p < N; ++p) {
        const Vec3 vp = g.node(p);
        for (std::size_t q = 0; q < N; ++q) {
            Mat3 k{};
            if (p == q) {
                for (int a = 0; a < 3; ++a) k[a][a] = self;
            } else {
                const Vec3 vq = g.node(q);
                k = phi_kernel({vp[0] - vq[0], vp[1] - vq[1], vp[2] - vq[2]}, t.gamma());
                for (auto& r : k)
                    for (double& x : r) x *= w;
            }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    phi[a][b](p, q) = sq[p] * k[a][b] * sq[q];
                    sigma[p][a][b] += k[a][b] * mu[q];
                }
        }
    }

    DenseChannels out{Eigen::MatrixXd::Zero(N, N), Eigen::MatrixXd::Zero(N, N)};
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(N, N);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(N, N);
            for (std::size_t p = 0; p < N; ++p) diag(p, p) = sigma[p][a][b];
            add_sandwich(d[a], diag, d[b], local);
            add_sandwich(d[a], phi[a][b], d[b], out.sum);
        }
    out.sum = 2.0 * (local - out.sum);
    out.diff = 2.0 * local;
    return out;
}

Eigen::MatrixXd assemble_L_dense(const CollisionTables& t) {
    const DenseChannels ch = assemble_L_channels(t);
    const Eigen::Index N = ch.sum.rows();
    Eigen::MatrixXd L(2 * N, 2 * N);
    const Eigen::MatrixXd same = 0.5 * (ch.sum + ch.diff);
    const Eigen::MatrixXd cross = 0.5 * (ch.sum - ch.diff);
    L.topLeftCorner(N, N) = same;
    L.bottomRightCorner(N, N) = same;
    L.topRightCorner(N, N) = cross;
    L.bottomLeftCorner(N, N) = cross;
    return L;
}

}  // namespace vml
