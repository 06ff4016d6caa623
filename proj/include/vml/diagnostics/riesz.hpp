#pragma once

#include <string>
#include <vector>

namespace vml {

// Scaling checks of the Riesz-potential and interpolation inequalities on
// the dilation family f_lambda(x) = g(x / lambda), g(x) = x_1 exp(-|x|^2/2)
// (zero mean), on a 3-D periodic box. Both sides of each inequality are
// evaluated numerically across the scales; their log-log slopes against
// lambda must agree, and the ratio lhs / rhs must stay bounded.
struct RieszItem {
    std::string name;
    double lhs_slope = 0.0;
    double rhs_slope = 0.0;
    double predicted_slope = 0.0;  // analytic dilation exponent of the rhs
    double max_ratio = 0.0;        // max lhs / rhs over the scales
    bool pass = false;
};

struct MinkowskiItem {
    double p = 0.0, q = 0.0;
    double lhs = 0.0, rhs = 0.0;  // ||f||_{L^q_x L^p_v}, ||f||_{L^p_v L^q_x}
    bool pass = false;
};

struct RieszParams {
    int n = 64;
    double box_length = 32.0;
    std::vector<double> scales{1.0, 1.2, 1.4, 1.6, 1.8};
    double slope_tol = 0.02;
    unsigned seed = 7;
};

struct RieszReport {
    std::vector<RieszItem> items;
    std::vector<MinkowskiItem> minkowski;
    bool pass() const;
};

// 0 < s < 3/2.
RieszReport riesz_checks(double s, const RieszParams& params = {});

// ||f||_{L^q_x L^p_v} and ||f||_{L^p_v L^q_x} for samples f[x][v] with unit
// cell weights; infinity is accepted for p and q.
double mixed_norm_xv(const std::vector<std::vector<double>>& f, double p, double q);
double mixed_norm_vx(const std::vector<std::vector<double>>& f, double p, double q);

}  // namespace vml
