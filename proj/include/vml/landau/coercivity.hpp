#pragma once

#include <cstdint>
#include <vector>

#include "vml/error.hpp"
#include "vml/landau/tables.hpp"
#include "vml/macro_micro/projection.hpp"
#include "vml/phase_grid/distribution.hpp"

namespace vml {

struct CoercivityReport {
    double min_ratio = 0.0;
    double median_ratio = 0.0;
    std::vector<double> ratios;
};

class CoercivityFailure : public Error {
public:
    CoercivityFailure(const std::string& msg, int sample, double ratio, VelocityPair f)
        : Error(msg), sample_(sample), ratio_(ratio), f_(std::move(f)) {}
    int sample() const { return sample_; }
    double ratio() const { return ratio_; }
    const VelocityPair& offending() const { return f_; }

private:
    int sample_;
    double ratio_;
    VelocityPair f_;
};

// Pair whose components are standard-normal combinations of the Hermite
// functions He_a(v1) He_b(v2) He_c(v3) mu^{1/2} / sqrt(a! b! c!), a+b+c <= degree.
VelocityPair random_hermite_pair(const VelocityGrid& grid, std::uint64_t seed, int degree = 4);

// <L g, g> / |g|^2_sigma for g = {I-P} f. Throws DomainError when f is
// (numerically) macroscopic.
double coercivity_ratio(const VelocityPair& f, const CollisionTables& tables, const Projection& proj);

// Min and median over `samples` seeded random microscopic functions.
// Throws CoercivityFailure on a nonpositive ratio.
CoercivityReport coercivity_gap(const CollisionTables& tables, const Projection& proj, int samples = 100,
                                std::uint64_t seed = 20240611, int degree = 4);

}  // namespace vml
