#include "vml/landau/kernel.hpp"

#include <cmath>
#include <numbers>

#include "vml/error.hpp"

namespace vml {

Mat3 phi_kernel(const Vec3& v, double gamma) {
    const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if (r2 == 0.0) throw DomainError("Landau kernel is singular at v = 0");
    const double scale = std::pow(r2, 0.5 * (gamma + 2.0));
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = ((i == j ? 1.0 : 0.0) - v[i] * v[j] / r2) * scale;
    return m;
}

double self_cell_value(double h, double gamma) {
    const double r = std::cbrt(3.0 / (4.0 * std::numbers::pi)) * h;
    const double radial = 4.0 * std::numbers::pi * std::pow(r, gamma + 5.0) / (gamma + 5.0);
    return (2.0 / 3.0) * radial / (h * h * h);
}

}  // namespace vml
