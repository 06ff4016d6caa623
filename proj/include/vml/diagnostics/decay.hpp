#pragma once

#include <string>
#include <vector>

namespace vml {

struct DecayFit {
    double t0 = 0.0, t1 = 0.0;  // window
    int points = 0;
    double exponent = 0.0;      // slope of log E against log(1+t)
    double intercept = 0.0;
    double residual = 0.0;      // RMS of the log-residuals
    double target = 0.0;        // -(k + s)
    bool reliable = false;      // residual below the threshold
};

inline constexpr double kDefaultResidualThreshold = 0.05;

// Least squares on the samples with t0 <= t <= t1. Throws DomainError for
// fewer than 4 points or nonpositive values in the window.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& E, double t0, double t1, int k,
                   double s, double threshold = kDefaultResidualThreshold);

// Window with the smallest fit residual among windows spanning at least
// min_ratio in (1+t) and containing at least min_points samples.
DecayFit auto_decay_fit(const std::vector<double>& t, const std::vector<double>& E, int k, double s,
                        double min_ratio = 4.0, int min_points = 8, double threshold = kDefaultResidualThreshold);

// -d log E / dt fitted over the last `fraction` of the samples.
double late_exponential_rate(const std::vector<double>& t, const std::vector<double>& E, double fraction = 0.25);

extern const char* const kTorusCaveat;

}  // namespace vml
