#pragma once
// Runtime-dispatched numeric kernels. Every entry has a portable scalar
// reference and, on x86-64, an AVX2/FMA variant selected at startup.

#include <cstddef>

namespace vml::simd {

struct KernelTable {
    const char* name;

    // y[i] += a * x[i]
    void (*axpy)(std::size_t n, double a, const double* x, double* y);
    // sum x[i] * y[i]
    double (*dot)(std::size_t n, const double* x, const double* y);
    // sum w[i] * x[i] * y[i]
    double (*wdot)(std::size_t n, const double* w, const double* x, const double* y);
    // out[i] = w[i] * x[i]
    void (*mul)(std::size_t n, const double* w, const double* x, double* out);
    // Symmetric 3x3 field times vector field, all structure-of-arrays.
    // s holds the components (00, 11, 22, 01, 02, 12) each of length n,
    // a and out hold three components of length n.
    void (*sym3_matvec)(std::size_t n, const double* s, const double* a, double* out);
    // z[i] *= p[i] for interleaved complex arrays of n entries.
    void (*cmul)(std::size_t n, const double* p, double* z);
    // sum w[i] * |z[i]|^2 for interleaved complex z.
    double (*cnorm2)(std::size_t n, const double* w, const double* z);
};

const KernelTable& scalar_kernels();
// Null when the binary or the CPU lacks AVX2 + FMA.
const KernelTable* avx2_kernels();

// Active table. Honors VML_SIMD=scalar in the environment.
const KernelTable& kernels();

}  // namespace vml::simd
