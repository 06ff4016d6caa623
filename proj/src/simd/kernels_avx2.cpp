#include "vml/simd/kernels.hpp"

#if defined(VML_HAVE_AVX2) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace vml::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void axpy(std::size_t n, double a, const double* x, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot(std::size_t n, const double* x, const double* y) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double wdot(std::size_t n, const double* w, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wx = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
        acc = _mm256_fmadd_pd(wx, _mm256_loadu_pd(y + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void mul(std::size_t n, const double* w, const double* x, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = w[i] * x[i];
}

void sym3_matvec(std::size_t n, const double* s, const double* a, double* out) {
    const double* s00 = s;
    const double* s11 = s + n;
    const double* s22 = s + 2 * n;
    const double* s01 = s + 3 * n;
    const double* s02 = s + 4 * n;
    const double* s12 = s + 5 * n;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(a + i);
        const __m256d y = _mm256_loadu_pd(a + n + i);
        const __m256d z = _mm256_loadu_pd(a + 2 * n + i);
        const __m256d c00 = _mm256_loadu_pd(s00 + i), c11 = _mm256_loadu_pd(s11 + i);
        const __m256d c22 = _mm256_loadu_pd(s22 + i), c01 = _mm256_loadu_pd(s01 + i);
        const __m256d c02 = _mm256_loadu_pd(s02 + i), c12 = _mm256_loadu_pd(s12 + i);
        __m256d o0 = _mm256_mul_pd(c00, x);
        o0 = _mm256_fmadd_pd(c01, y, o0);
        o0 = _mm256_fmadd_pd(c02, z, o0);
        __m256d o1 = _mm256_mul_pd(c01, x);
        o1 = _mm256_fmadd_pd(c11, y, o1);
        o1 = _mm256_fmadd_pd(c12, z, o1);
        __m256d o2 = _mm256_mul_pd(c02, x);
        o2 = _mm256_fmadd_pd(c12, y, o2);
        o2 = _mm256_fmadd_pd(c22, z, o2);
        _mm256_storeu_pd(out + i, o0);
        _mm256_storeu_pd(out + n + i, o1);
        _mm256_storeu_pd(out + 2 * n + i, o2);
    }
    for (; i < n; ++i) {
        const double x = a[i], y = a[n + i], z = a[2 * n + i];
        out[i] = s00[i] * x + s01[i] * y + s02[i] * z;
        out[n + i] = s01[i] * x + s11[i] * y + s12[i] * z;
        out[2 * n + i] = s02[i] * x + s12[i] * y + s22[i] * z;
    }
}

// Two complex numbers per register: [r0 i0 r1 i1].
void cmul(std::size_t n, const double* p, double* z) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vp = _mm256_loadu_pd(p + 2 * i);
        const __m256d vz = _mm256_loadu_pd(z + 2 * i);
        const __m256d pr = _mm256_movedup_pd(vp);
        const __m256d pi = _mm256_permute_pd(vp, 0xF);
        const __m256d zs = _mm256_permute_pd(vz, 0x5);
        const __m256d t = _mm256_mul_pd(pi, zs);
        _mm256_storeu_pd(z + 2 * i, _mm256_fmaddsub_pd(pr, vz, t));
    }
    for (; i < n; ++i) {
        const double pr = p[2 * i], pi = p[2 * i + 1];
        const double zr = z[2 * i], zi = z[2 * i + 1];
        z[2 * i] = pr * zr - pi * zi;
        z[2 * i + 1] = pr * zi + pi * zr;
    }
}

double cnorm2(std::size_t n, const double* w, const double* z) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vz = _mm256_loadu_pd(z + 2 * i);
        const __m256d sq = _mm256_mul_pd(vz, vz);
        const __m128d w2 = _mm_loadu_pd(w + i);
        const __m256d vw = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);
        acc = _mm256_fmadd_pd(vw, sq, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
    return s;
}

const KernelTable table{"avx2", axpy, dot, wdot, mul, sym3_matvec, cmul, cnorm2};

}  // namespace

const KernelTable* avx2_kernels() { return &table; }

}  // namespace vml::simd

#else

namespace vml::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace vml::simd

#endif
