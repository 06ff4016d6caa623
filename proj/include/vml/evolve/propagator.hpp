#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vml/evolve/config.hpp"
#include "vml/landau/tables.hpp"
#include "vml/phase_grid/distribution.hpp"

namespace vml {

// Crank-Nicolson collision substep y <- (I + tau L)^{-1} (I - tau L) y on one
// real velocity pair. L splits into the sum channel f+ + f- and the
// difference channel f+ - f-, which are advanced independently.
class CollisionPropagator {
public:
    explicit CollisionPropagator(double tau) : tau_(tau) {}
    virtual ~CollisionPropagator() = default;

    double tau() const { return tau_; }
    virtual std::string name() const = 0;

    // Advances y and returns 2 <L ybar, ybar> with ybar the substep midpoint,
    // the exact dissipation of the scheme: |y1|^2 - |y0|^2 = -4 tau <L ybar, ybar>.
    double advance(VelocityPair& y) const;
    // advance() on every pair; entry i is the value advance() returns.
    virtual std::vector<double> advance_batch(std::vector<VelocityPair>& ys) const;

protected:
    // Advances one channel in place and returns <L_c ybar, ybar> (plain sum,
    // no quadrature weight).
    virtual double advance_channel(std::vector<double>& y, bool sum_channel) const = 0;

    double tau_;
};

// Precomputed Cayley matrices (I + tau L_c)^{-1} (I - tau L_c) acting on a
// coordinate vector; batches go through one matrix product per channel.
class MatrixPropagator : public CollisionPropagator {
public:
    using CollisionPropagator::CollisionPropagator;
    std::vector<double> advance_batch(std::vector<VelocityPair>& ys) const override;

protected:
    double advance_channel(std::vector<double>& y, bool sum_channel) const override;
    // Full velocity vector to coordinates and back.
    virtual void gather(const std::vector<double>& y, double* out) const = 0;
    virtual void scatter(const double* in, std::vector<double>& y) const = 0;
    // Column i of Y0 advanced into Y1; returns sum_r weight_r (y0^2 - y1^2) / (4 tau)
    // per column, which equals <L ybar, ybar> because L ybar = (y0 - y1) / (2 tau).
    std::vector<double> step_columns(const Eigen::MatrixXd& Y0, Eigen::MatrixXd& Y1, int channel) const;

    Eigen::MatrixXd step_[2];
    std::vector<double> weight_;
};

// Dense propagator on the subspace of velocity functions invariant under
// v2 -> -v2, v3 -> -v3 and v2 <-> v3. Exact for such inputs; other inputs
// are read through their orbit representatives.
class ReducedPropagator : public MatrixPropagator {
public:
    ReducedPropagator(std::shared_ptr<const CollisionTables> tables, double tau);
    std::string name() const override { return "reduced"; }
    std::size_t reduced_size() const { return rep_.size(); }
    // Orbit index of a full velocity index.
    std::size_t orbit(std::size_t p) const { return orbit_[p]; }

protected:
    void gather(const std::vector<double>& y, double* out) const override;
    void scatter(const double* in, std::vector<double>& y) const override;

private:
    std::shared_ptr<const CollisionTables> tables_;
    std::vector<std::size_t> orbit_, rep_;
};

// Dense propagator on the full velocity space (n_v <= 12).
class DensePropagator : public MatrixPropagator {
public:
    DensePropagator(std::shared_ptr<const CollisionTables> tables, double tau);
    std::string name() const override { return "dense"; }

protected:
    void gather(const std::vector<double>& y, double* out) const override;
    void scatter(const double* in, std::vector<double>& y) const override;

private:
    std::shared_ptr<const CollisionTables> tables_;
};

// Matrix-free preconditioned conjugate gradients on I + tau L with the
// diagonal of the local part as preconditioner. Throws ConvergenceError
// when the relative residual stays above tol after max_iter iterations.
class CgPropagator : public CollisionPropagator {
public:
    CgPropagator(std::shared_ptr<const CollisionTables> tables, double tau, double tol, int max_iter);
    std::string name() const override { return "cg"; }
    int last_iterations() const { return last_iterations_; }

protected:
    double advance_channel(std::vector<double>& y, bool sum_channel) const override;

private:
    std::vector<double> apply(const std::vector<double>& y, bool sum_channel) const;

    std::shared_ptr<const CollisionTables> tables_;
    double tol_;
    int max_iter_;
    std::vector<double> precond_;
    mutable int last_iterations_ = 0;
};

// Largest velocity grid the dense backend accepts.
inline constexpr int kDenseMaxN = 12;

// True when every block of f is invariant under the reduced symmetry group
// to relative tolerance tol.
bool is_axisymmetric(const DistributionPair& f, const VelocityGrid& grid, double tol = 1e-12);

std::unique_ptr<CollisionPropagator> make_propagator(std::shared_ptr<const CollisionTables> tables, double tau,
                                                     CollisionSolver solver, double cg_tol, int cg_max_iter);

}  // namespace vml
