#pragma once

#include <array>
#include <span>
#include <vector>

#include "vml/phase_grid/distribution.hpp"
#include "vml/phase_grid/spatial_grid.hpp"
#include "vml/phase_grid/velocity_grid.hpp"

namespace vml {

// Coefficients of Pf = a+ [1,0] mu^{1/2} + a- [0,1] mu^{1/2}
//                    + b.v [1,1] mu^{1/2} + c (|v|^2 - 3) [1,1] mu^{1/2}.
template <class T>
struct MacroCoefficients {
    T a_plus{}, a_minus{};
    std::array<T, 3> b{};
    T c{};
};

// Per-x macroscopic fields, in the same space (physical or Fourier) as the
// distribution they came from.
struct MacroFields {
    std::vector<cplx> a_plus, a_minus, c;
    std::array<std::vector<cplx>, 3> b;

    explicit MacroFields(std::size_t n = 0);
    std::size_t size() const { return a_plus.size(); }
};

// Orthogonal projection onto the null space N of L in the quadrature inner
// product. The pair space splits into the sum channel (f+ + f-)/2, which is
// projected onto span{mu^{1/2}, v mu^{1/2}, (|v|^2-3) mu^{1/2}}, and the
// difference channel (f+ - f-)/2, projected onto mu^{1/2}. Both use a basis
// orthonormalised on the grid, so P is idempotent to round-off and swapping
// the species swaps a+ and a- bit for bit.
class Projection {
public:
    explicit Projection(const VelocityGrid& grid);

    const VelocityGrid& grid() const { return grid_; }

    MacroCoefficients<double> coefficients(std::span<const double> fp, std::span<const double> fm) const;
    MacroCoefficients<cplx> coefficients(std::span<const cplx> fp, std::span<const cplx> fm) const;

    void reconstruct(const MacroCoefficients<double>& m, std::span<double> fp, std::span<double> fm) const;
    void reconstruct(const MacroCoefficients<cplx>& m, std::span<cplx> fp, std::span<cplx> fm) const;

    VelocityPair project(const VelocityPair& f) const;
    VelocityPair micro(const VelocityPair& f) const;

    // The six analytic spanning vectors of N:
    // [1,0] mu^{1/2}, [0,1] mu^{1/2}, [v_i, v_i] mu^{1/2}, [|v|^2, |v|^2] mu^{1/2}.
    std::vector<VelocityPair> null_basis() const;

private:
    template <class T>
    MacroCoefficients<T> coeffs(std::span<const T> fp, std::span<const T> fm) const;
    template <class T>
    void build(const MacroCoefficients<T>& m, std::span<T> fp, std::span<T> fm) const;

    VelocityGrid grid_;
    std::array<std::vector<double>, 5> q_;  // orthonormal basis of the sum channel
    std::array<std::vector<double>, 5> e_;  // analytic basis
    std::array<std::array<double, 5>, 5> rinv_{};  // e = q R, rinv_ = R^{-1}
};

// (Pf, macro fields) for a distribution on the whole spatial grid.
std::pair<DistributionPair, MacroFields> project_P(const DistributionPair& f, const Projection& proj);
DistributionPair micro_part(const DistributionPair& f, const Projection& proj);
MacroFields macro_fields(const DistributionPair& f, const Projection& proj);

}  // namespace vml
