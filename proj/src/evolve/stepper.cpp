#include "vml/evolve/stepper.hpp"

#include <cmath>

#include "vml/error.hpp"
#include "vml/landau/operator.hpp"
#include "vml/macro_micro/moments.hpp"
#include "vml/parallel.hpp"

namespace vml {

namespace {

const cplx I(0.0, 1.0);

bool fields_longitudinal(const EMField& em) {
    for (std::size_t m = 0; m < em.size(); ++m) {
        if (em.E[1][m] != 0.0 || em.E[2][m] != 0.0) return false;
        for (int c = 0; c < 3; ++c)
            if (em.B[c][m] != 0.0) return false;
    }
    return true;
}

void axpy(DistributionPair& y, cplx a, const DistributionPair& x) {
    cplx* py = y.data();
    const cplx* px = x.data();
    for (std::size_t i = 0; i < y.size(); ++i) py[i] += a * px[i];
}

void axpy(VectorField& y, double a, const VectorField& x) {
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < y[c].size(); ++m) y[c][m] += a * x[c][m];
}

// E.v mu^{1/2} q1 added to df, mode by mode.
void add_field_source(DistributionPair& df, const VectorField& E, const VelocityGrid& g) {
    const auto sq = g.sqrt_mu();
    const auto v0 = g.v(0), v1 = g.v(1), v2 = g.v(2);
    for (std::size_t m = 0; m < df.n_x(); ++m) {
        const cplx e0 = E[0][m], e1 = E[1][m], e2 = E[2][m];
        if (e0 == 0.0 && e1 == 0.0 && e2 == 0.0) continue;
        auto p = df.block(0, m);
        auto q = df.block(1, m);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const cplx src = (e0 * v0[i] + e1 * v1[i] + e2 * v2[i]) * sq[i];
            p[i] += src;
            q[i] -= src;
        }
    }
}

// Maxwell rate; with coupling on, also the E.v mu^{1/2} q1 source in df.
FieldRate maxwell_part(const PhaseState& s, const Context& ctx, DistributionPair& df) {
    const SpatialGrid& sg = ctx.sgrid();
    if (ctx.config.coupling) {
        add_field_source(df, s.em.E, ctx.vgrid());
        return field_rhs(s.em, s.f, sg, ctx.vgrid());
    }
    FieldRate r{curl(s.em.B, sg), curl(s.em.E, sg)};
    for (auto& comp : r.dB)
        for (cplx& z : comp) z = -z;
    return r;
}

// Physical-space force and quadratic collision terms, returned spectrally.
DistributionPair nonlinear_terms(const PhaseState& s, const Context& ctx, bool force, bool gamma) {
    const SpatialGrid& sg = ctx.sgrid();
    const VelocityGrid& g = ctx.vgrid();
    const CollisionTables& t = *ctx.tables;
    const std::size_t N = g.size(), X = sg.size();

    DistributionPair phys = s.f;
    for (int sp = 0; sp < 2; ++sp) sg.inverse_batch(phys.species(sp).data(), N);
    VectorField E = s.em.E, B = s.em.B;
    for (int c = 0; c < 3; ++c) {
        E[c] = sg.inverse(E[c]);
        B[c] = sg.inverse(B[c]);
    }

    DistributionPair out(X, N, Space::physical);
    const auto v0 = g.v(0), v1 = g.v(1), v2 = g.v(2);
    parallel_for(X, [&](std::size_t x) {
        VelocityPair fx(N);
        for (std::size_t p = 0; p < N; ++p) {
            fx.plus[p] = phys.block(0, x)[p].real();
            fx.minus[p] = phys.block(1, x)[p].real();
        }
        VelocityPair acc(N);
        if (force) {
            const double e[3] = {E[0][x].real(), E[1][x].real(), E[2][x].real()};
            const double b[3] = {B[0][x].real(), B[1][x].real(), B[2][x].real()};
            std::vector<double> grad(3 * N);
            for (int sp = 0; sp < 2; ++sp) {
                // (E + v x B).(grad f - v f / 2): the v x B part of the v f / 2 term vanishes.
                for (int c = 0; c < 3; ++c) t.force_gradient().apply(fx[sp].data(), grad.data() + c * N, c);
                const double q = sp == 0 ? 1.0 : -1.0;
                for (std::size_t p = 0; p < N; ++p) {
                    const double F0 = e[0] + v1[p] * b[2] - v2[p] * b[1];
                    const double F1 = e[1] + v2[p] * b[0] - v0[p] * b[2];
                    const double F2 = e[2] + v0[p] * b[1] - v1[p] * b[0];
                    acc[sp][p] -= q * (F0 * grad[p] + F1 * grad[N + p] + F2 * grad[2 * N + p]);
                }
            }
        }
        if (gamma) {
            const VelocityPair G = apply_Gamma(fx, fx, t);
            for (int sp = 0; sp < 2; ++sp)
                for (std::size_t p = 0; p < N; ++p) acc[sp][p] += G[sp][p];
        }
        for (int sp = 0; sp < 2; ++sp)
            for (std::size_t p = 0; p < N; ++p) out.block(sp, x)[p] = acc[sp][p];
    });
    for (int sp = 0; sp < 2; ++sp) sg.forward_batch(out.species(sp).data(), N);
    out.set_space(Space::fourier);
    return out;
}

}  // namespace

CollisionSolver resolve_solver(const Context& ctx, const PhaseState& initial) {
    const RunConfig& c = ctx.config;
    if (c.solver != CollisionSolver::automatic) return c.solver;
    const auto act = ctx.sgrid().active_axes();
    if (act[0] && !act[1] && !act[2] && fields_longitudinal(initial.em) && is_axisymmetric(initial.f, ctx.vgrid()))
        return CollisionSolver::reduced;
    if (c.n_v <= kDenseMaxN) return CollisionSolver::dense;
    return CollisionSolver::cg;
}

Stepper::Stepper(std::shared_ptr<const Context> ctx, const PhaseState& initial) : ctx_(std::move(ctx)) {
    const RunConfig& c = ctx_->config;
    if (c.collisions)
        prop_ = make_propagator(ctx_->tables, 0.5 * c.dt, resolve_solver(*ctx_, initial), c.cg_tol, c.cg_max_iter);
    stats_.mode_dissipation.assign(ctx_->sgrid().size(), 0.0);
    const VelocityGrid& g = ctx_->vgrid();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < g.size(); ++p) acc += g.v(i)[p] * g.v(j)[p] * g.mu()[p];
            vv_[3 * i + j] = g.weight() * acc;
        }
}

void Stepper::transport(PhaseState& s, double tau) const {
    const SpatialGrid& sg = ctx_->sgrid();
    const VelocityGrid& g = ctx_->vgrid();
    const int n = g.n();
    const auto axis = g.axis();
    std::vector<cplx> ph[3];
    for (auto& p : ph) p.resize(n);
    for (std::size_t m = 0; m < sg.size(); ++m) {
        const auto k = sg.wavevector(m);
        if (k[0] == 0.0 && k[1] == 0.0 && k[2] == 0.0) continue;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < n; ++i) ph[c][i] = std::exp(-I * (tau * k[c] * axis[i]));
        for (int sp = 0; sp < 2; ++sp) {
            auto b = s.f.block(sp, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const cplx pij = ph[0][i] * ph[1][j];
                    cplx* row = b.data() + g.index(i, j, 0);
                    for (int k2 = 0; k2 < n; ++k2) row[k2] *= pij * ph[2][k2];
                }
        }
    }
}

Stepper::FieldForceRate Stepper::field_force_rate(const PhaseState& s) const {
    const RunConfig& c = ctx_->config;
    const SpatialGrid& sg = ctx_->sgrid();
    const VelocityGrid& g = ctx_->vgrid();
    FieldForceRate r;
    const bool nl = c.mode == Mode::nonlinear;
    if (nl && (c.fields || c.collisions))
        r.df = nonlinear_terms(s, *ctx_, c.fields, c.collisions);
    else
        r.df = DistributionPair(sg.size(), g.size(), Space::fourier);
    if (c.fields)
        r.fields = maxwell_part(s, *ctx_, r.df);
    else
        r.fields = {zero_vector_field(sg.size()), zero_vector_field(sg.size())};
    return r;
}

void Stepper::field_force(PhaseState& s, double tau) const {
    const RunConfig& c = ctx_->config;
    if (c.mode == Mode::linearized) {
        if (c.fields) linear_field_force(s, tau);
        return;
    }
    if (!c.fields && !c.collisions) return;
    const auto k1 = field_force_rate(s);
    PhaseState mid = s;
    axpy(mid.f, 0.5 * tau, k1.df);
    axpy(mid.em.E, 0.5 * tau, k1.fields.dE);
    axpy(mid.em.B, 0.5 * tau, k1.fields.dB);
    const auto k2 = field_force_rate(mid);
    axpy(s.f, tau, k2.df);
    axpy(s.em.E, tau, k2.fields.dE);
    axpy(s.em.B, tau, k2.fields.dB);
}

// Same midpoint rule as the general path, using that the current of the
// source E.v mu^{1/2} q1 is 2 M E with M = <v v mu>.
void Stepper::linear_field_force(PhaseState& s, double tau) const {
    const SpatialGrid& sg = ctx_->sgrid();
    const std::size_t X = sg.size();
    const bool coupled = ctx_->config.coupling;
    VectorField J = coupled ? current(s.f, ctx_->vgrid()) : zero_vector_field(X);

    VectorField dE1 = curl(s.em.B, sg), cE = curl(s.em.E, sg);
    EMField mid(X);
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < X; ++m) {
            mid.E[c][m] = s.em.E[c][m] + 0.5 * tau * (dE1[c][m] - J[c][m]);
            mid.B[c][m] = s.em.B[c][m] - 0.5 * tau * cE[c][m];
        }
    const VectorField cB2 = curl(mid.B, sg), cE2 = curl(mid.E, sg);
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < X; ++m) {
            cplx j = J[c][m];
            if (coupled)
                for (int d = 0; d < 3; ++d) j += tau * vv_[3 * c + d] * s.em.E[d][m];
            s.em.E[c][m] += tau * (cB2[c][m] - j);
            s.em.B[c][m] -= tau * cE2[c][m];
        }
    if (!coupled) return;
    for (int c = 0; c < 3; ++c)
        for (cplx& z : mid.E[c]) z *= tau;
    add_field_source(s.f, mid.E, ctx_->vgrid());
}

void Stepper::collide(PhaseState& s) {
    std::fill(stats_.mode_dissipation.begin(), stats_.mode_dissipation.end(), 0.0);
    if (!prop_) return;
    const SpatialGrid& sg = ctx_->sgrid();
    const std::size_t N = ctx_->vgrid().size();
    const double w = ctx_->vgrid().weight();
    const auto half = sg.half_modes();
    std::vector<double> diss(half.size(), 0.0);
    std::vector<VelocityPair> ys(2 * half.size(), VelocityPair(N));
    for (std::size_t h = 0; h < half.size(); ++h)
        for (int sp = 0; sp < 2; ++sp) {
            const auto b = s.f.block(sp, half[h]);
            for (std::size_t p = 0; p < N; ++p) {
                ys[2 * h][sp][p] = b[p].real();
                ys[2 * h + 1][sp][p] = b[p].imag();
            }
        }
    const auto d = prop_->advance_batch(ys);
    for (std::size_t h = 0; h < half.size(); ++h) {
        diss[h] = w * (d[2 * h] + d[2 * h + 1]);
        for (int sp = 0; sp < 2; ++sp) {
            auto b = s.f.block(sp, half[h]);
            for (std::size_t p = 0; p < N; ++p) b[p] = cplx(ys[2 * h][sp][p], ys[2 * h + 1][sp][p]);
        }
    }
    for (std::size_t h = 0; h < half.size(); ++h) {
        const std::size_t m = half[h], mc = sg.conjugate(m);
        stats_.mode_dissipation[m] = diss[h];
        if (mc == m) continue;
        stats_.mode_dissipation[mc] = diss[h];
        for (int sp = 0; sp < 2; ++sp) {
            const auto src = s.f.block(sp, m);
            auto dst = s.f.block(sp, mc);
            for (std::size_t p = 0; p < N; ++p) dst[p] = std::conj(src[p]);
        }
    }
}

void Stepper::step(PhaseState& s) {
    const RunConfig& c = ctx_->config;
    const double h = 0.5 * c.dt;
    if (c.transport) transport(s, h);
    field_force(s, h);
    collide(s);
    field_force(s, h);
    if (c.transport) transport(s, h);
    s.t += c.dt;
}

StateRate rhs_full(const PhaseState& s, const Context& ctx) {
    const RunConfig& c = ctx.config;
    const SpatialGrid& sg = ctx.sgrid();
    const VelocityGrid& g = ctx.vgrid();
    const std::size_t N = g.size();
    if (s.f.space() != Space::fourier) throw DomainError("rhs_full needs f in Fourier-x representation");
    StateRate r;
    r.df = DistributionPair(sg.size(), N, Space::fourier);
    if (c.transport) {
        for (std::size_t m = 0; m < sg.size(); ++m) {
            const auto k = sg.wavevector(m);
            for (int sp = 0; sp < 2; ++sp) {
                const auto src = s.f.block(sp, m);
                auto dst = r.df.block(sp, m);
                for (std::size_t p = 0; p < N; ++p) {
                    const double kv = k[0] * g.v(0)[p] + k[1] * g.v(1)[p] + k[2] * g.v(2)[p];
                    dst[p] -= I * kv * src[p];
                }
            }
        }
    }
    if (c.collisions) {
        for (std::size_t m = 0; m < sg.size(); ++m) {
            VelocityPair re(N), im(N);
            for (int sp = 0; sp < 2; ++sp)
                for (std::size_t p = 0; p < N; ++p) {
                    re[sp][p] = s.f.block(sp, m)[p].real();
                    im[sp][p] = s.f.block(sp, m)[p].imag();
                }
            const auto Lre = apply_L(re, *ctx.tables);
            const auto Lim = apply_L(im, *ctx.tables);
            for (int sp = 0; sp < 2; ++sp)
                for (std::size_t p = 0; p < N; ++p) r.df.block(sp, m)[p] -= cplx(Lre[sp][p], Lim[sp][p]);
        }
    }
    r.fields = {zero_vector_field(sg.size()), zero_vector_field(sg.size())};
    if (c.mode == Mode::nonlinear && (c.fields || c.collisions))
        axpy(r.df, 1.0, nonlinear_terms(s, ctx, c.fields, c.collisions));
    if (c.fields) r.fields = maxwell_part(s, ctx, r.df);
    return r;
}

}  // namespace vml
