#pragma once

#include <array>
#include <vector>

#include "vml/evolve/state.hpp"

namespace vml {

// Energy and dissipation functionals with every combination coefficient
// set to 1. x-derivatives are Fourier multipliers; v-derivatives are
// second-order central differences with zero extension, |beta| <= beta_max.
// Weights w_{ell - |beta|}(t, v) are evaluated at the state's time.

// sum_{j = lo}^{hi} sum_{|alpha| = j} kappa^{2 alpha}; zero when hi < lo.
double derivative_weight(const std::array<double, 3>& kappa, int lo, int hi);

// Velocity multi-indices with |beta| <= beta_max, graded order.
std::vector<std::array<int, 3>> velocity_multiindices(int beta_max);

// Per-mode squared L^2 quantities. Each half mode carries its conjugate
// (entries for the conjugate modes are zero), so plain sums over m are
// torus integrals.
struct ModeEnergies {
    std::vector<double> f, E, B;       // |f_k|^2, |E_k|^2, |B_k|^2
    std::vector<double> Pf;            // |(Pf)_k|^2
    std::vector<double> micro_sigma;   // |({I-P}f)_k|^2_sigma
    std::vector<double> charge;        // |(a+ - a-)_k|^2
    std::vector<double> macro;         // |a+|^2 + |a-|^2 + |b|^2 + |c|^2
};
ModeEnergies mode_energies(const PhaseState& s, const Context& ctx);

// One weighted velocity sum: w_{ell - |beta|}^2 (times <v>^2 when
// japanese) against d_beta g, in L^2 or in the sigma norm, with g = f or
// g = {I-P} f.
struct VelocityRequest {
    double ell = 0.0;
    bool japanese = false;
    bool sigma = false;
    bool micro = false;
};
// result[r][b][m]: sums over |beta| = b for request r and mode m.
std::vector<std::vector<std::vector<double>>> velocity_sums(const PhaseState& s, const Context& ctx,
                                                            const std::vector<VelocityRequest>& req, int bmax);
// Same but resolved per multi-index: result[r][beta index][m].
std::vector<std::vector<std::vector<double>>> velocity_sums_per_index(const PhaseState& s, const Context& ctx,
                                                                      const std::vector<VelocityRequest>& req,
                                                                      int bmax);

// E_N = sum_{|alpha| <= n} ||d^alpha (f, E, B)||^2
double energy_unweighted(const PhaseState& s, const Context& ctx, int n);
// E^k_{N0} = sum_{k <= |alpha| <= n0} ||d^alpha (f, E, B)||^2
double energy_k(const PhaseState& s, const Context& ctx, int k, int n0);
// D^k_{N0}
double dissipation_k(const PhaseState& s, const Context& ctx, int k, int n0);
// E_{n,ell}
double energy_weighted(const PhaseState& s, const Context& ctx, int n, double ell);
// E^k_{n0,ell}; the mixed sum runs over k <= |alpha|, |alpha| + |beta| <= n0.
double energy_weighted_k(const PhaseState& s, const Context& ctx, int k, int n0, double ell);

struct DissipationParts {
    double macro = 0.0;   // sum_{1 <= |alpha| <= n} ||d^alpha (a+, a-, b, c)||^2
    double sigma = 0.0;   // weighted sigma norms of d^alpha_beta {I-P} f
    double charge = 0.0;  // ||a+ - a-||^2
    double fields = 0.0;  // ||E||^2_{H^{n-1}} + ||grad B||^2_{H^{n-2}}
    double extra = 0.0;   // sum ||<v> w d^alpha_beta {I-P} f||^2, without the time factor
    double factor = 1.0;  // (1+t)^{-1-theta}
    double total() const { return macro + sigma + charge + fields + factor * extra; }
};
DissipationParts dissipation_weighted_parts(const PhaseState& s, const Context& ctx, int n, double ell);
double dissipation_weighted(const PhaseState& s, const Context& ctx, int n, double ell);

// ||Lambda^{-s} (f, E, B)||^2 (k = 0 excluded)
double negative_sobolev2(const PhaseState& s, const Context& ctx, double s_exp);
// E_order for a possibly fractional order: integer part as E_N plus
// ||Lambda^order (f, E, B)||^2 when order is not an integer.
double energy_fractional(const PhaseState& s, const Context& ctx, double order);

struct FunctionalReport {
    double t = 0.0;
    long step = 0;
    double f_l2sq = 0.0;
    double field_energy = 0.0;
    double E_N = 0.0;
    std::array<double, 3> E_k{};    // E^k_{N0}, k = 0, 1, 2
    std::array<double, 3> D_k{};    // D^k_{N0}
    std::array<double, 3> E_kw{};   // E^k_{N0, l0}
    double E_Nl = 0.0;
    double D_Nl = 0.0;
    double Ebar_top = 0.0;          // Ebar_{N0, l0 + l*}
    double X = 0.0;
    double hs_f = 0.0, hs_E = 0.0, hs_B = 0.0;  // ||Lambda^{-s} .||
    double zero_mode = 0.0;         // |f_{k=0}|^2, outside every Lambda^{-s} norm
    double gauss = 0.0;
    double div_B = 0.0;
    std::array<double, 3> cap{};    // max{Ebar_{N0,(k+s)/2}, E_{N0+k+s}} at this time
    std::array<double, 3> interp{};
    double lyapunov_delta = 0.0;
    long lyapunov_flags = 0;
    double max_imag = 0.0;
};

// Every instantaneous entry; X, interp and the Lyapunov fields are left
// for the trajectory monitors.
FunctionalReport compute_report(const PhaseState& s, const Context& ctx, long step = 0);

}  // namespace vml
