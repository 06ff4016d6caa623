#include "vml/simd/kernels.hpp"

namespace vml::simd {
namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(std::size_t n, const double* x, const double* y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double wdot(std::size_t n, const double* w, const double* x, const double* y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * y[i];
    return acc;
}

void mul(std::size_t n, const double* w, const double* x, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = w[i] * x[i];
}

void sym3_matvec(std::size_t n, const double* s, const double* a, double* out) {
    const double* s00 = s;
    const double* s11 = s + n;
    const double* s22 = s + 2 * n;
    const double* s01 = s + 3 * n;
    const double* s02 = s + 4 * n;
    const double* s12 = s + 5 * n;
    const double* a0 = a;
    const double* a1 = a + n;
    const double* a2 = a + 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a0[i], y = a1[i], z = a2[i];
        out[i] = s00[i] * x + s01[i] * y + s02[i] * z;
        out[n + i] = s01[i] * x + s11[i] * y + s12[i] * z;
        out[2 * n + i] = s02[i] * x + s12[i] * y + s22[i] * z;
    }
}

void cmul(std::size_t n, const double* p, double* z) {
    for (std::size_t i = 0; i < n; ++i) {
        const double pr = p[2 * i], pi = p[2 * i + 1];
        const double zr = z[2 * i], zi = z[2 * i + 1];
        z[2 * i] = pr * zr - pi * zi;
        z[2 * i + 1] = pr * zi + pi * zr;
    }
}

double cnorm2(std::size_t n, const double* w, const double* z) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
    return acc;
}

const KernelTable table{"scalar", axpy, dot, wdot, mul, sym3_matvec, cmul, cnorm2};

}  // namespace

const KernelTable& scalar_kernels() { return table; }

}  // namespace vml::simd
