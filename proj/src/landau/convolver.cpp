#include "vml/landau/convolver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <mutex>

#include "vml/error.hpp"
#include "vml/landau/kernel.hpp"
#include "vml/simd/kernels.hpp"

namespace vml {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
constexpr int kPairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
}  // namespace

struct KernelConvolver::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~Plans() {
        std::lock_guard<std::mutex> g(planner_mutex());
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

KernelConvolver::KernelConvolver(const VelocityGrid& grid, double gamma)
    : n_(grid.n()), p_(2 * grid.n()), plans_(std::make_unique<Plans>()) {
    const std::size_t P = p_;
    padded_ = P * P * P;
    spectral_ = P * P * (P / 2 + 1);

    {
        std::lock_guard<std::mutex> g(planner_mutex());
        double* r = fftw_alloc_real(padded_);
        fftw_complex* c = fftw_alloc_complex(spectral_);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        plans_->r2c = fftw_plan_dft_r2c_3d(p_, p_, p_, r, c, flags);
        plans_->c2r = fftw_plan_dft_c2r_3d(p_, p_, p_, c, r, flags);
        fftw_free(r);
        fftw_free(c);
    }
    if (!plans_->r2c || !plans_->c2r) throw Error("FFTW planning failed");

    const double h = grid.spacing();
    const double w = grid.weight();
    const double self = self_cell_value(h, gamma) * w;
    kernel_hat_.assign(6 * 2 * spectral_, 0.0);
    std::vector<double> table(padded_);
    std::vector<std::complex<double>> spec(spectral_);
    const double norm = 1.0 / static_cast<double>(padded_);
    for (int c = 0; c < 6; ++c) {
        std::fill(table.begin(), table.end(), 0.0);
        const int a = kPairs[c][0], b = kPairs[c][1];
        for (int i = -n_ + 1; i < n_; ++i)
            for (int j = -n_ + 1; j < n_; ++j)
                for (int k = -n_ + 1; k < n_; ++k) {
                    const std::size_t idx =
                        ((static_cast<std::size_t>((i + p_) % p_) * P) + (j + p_) % p_) * P + (k + p_) % p_;
                    if (i == 0 && j == 0 && k == 0) {
                        table[idx] = a == b ? self : 0.0;
                        continue;
                    }
                    const Mat3 phi = phi_kernel({i * h, j * h, k * h}, gamma);
                    table[idx] = phi[a][b] * w;
                }
        forward(table.data(), spec.data());
        double* dst = kernel_hat_.data() + c * 2 * spectral_;
        // The padded kernel is even, so its transform is real.
        for (std::size_t m = 0; m < spectral_; ++m) {
            dst[2 * m] = spec[m].real() * norm;
            dst[2 * m + 1] = spec[m].real() * norm;
        }
    }
}

KernelConvolver::~KernelConvolver() = default;

void KernelConvolver::forward(const double* field, std::complex<double>* spec) const {
    fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(field), reinterpret_cast<fftw_complex*>(spec));
}

void KernelConvolver::inverse_add(std::complex<double>* spec, double* field) const {
    std::vector<double> full(padded_);
    fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(spec), full.data());
    const std::size_t n = n_, P = p_;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double* src = full.data() + (i * P + j) * P;
            double* dst = field + (i * n + j) * n;
            for (std::size_t k = 0; k < n; ++k) dst[k] += src[k];
        }
}

namespace {
void embed(const double* field, int n, int p, std::vector<double>& padded) {
    std::fill(padded.begin(), padded.end(), 0.0);
    const std::size_t N = n, P = p;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            std::copy(field + (i * N + j) * N, field + (i * N + j) * N + N, padded.data() + (i * P + j) * P);
}
}  // namespace

void KernelConvolver::convolve_scalar(std::span<const double> g, std::span<double> out) const {
    const std::size_t N = static_cast<std::size_t>(n_) * n_ * n_;
    if (g.size() != N || out.size() != 6 * N) throw ShapeError("convolution operand size mismatch");
    std::vector<double> padded(padded_);
    embed(g.data(), n_, p_, padded);
    std::vector<std::complex<double>> ghat(spectral_), tmp(spectral_);
    forward(padded.data(), ghat.data());
    const auto& K = simd::kernels();
    std::fill(out.begin(), out.end(), 0.0);
    for (int c = 0; c < 6; ++c) {
        std::copy(ghat.begin(), ghat.end(), tmp.begin());
        K.mul(2 * spectral_, kernel_hat_.data() + c * 2 * spectral_, reinterpret_cast<const double*>(ghat.data()),
              reinterpret_cast<double*>(tmp.data()));
        inverse_add(tmp.data(), out.data() + c * N);
    }
}

void KernelConvolver::convolve_vector(std::span<const double> a, std::span<double> out) const {
    const std::size_t N = static_cast<std::size_t>(n_) * n_ * n_;
    if (a.size() != 3 * N || out.size() != 3 * N) throw ShapeError("convolution operand size mismatch");
    std::vector<double> padded(padded_);
    std::vector<std::complex<double>> ahat(3 * spectral_), bhat(3 * spectral_);
    for (int c = 0; c < 3; ++c) {
        embed(a.data() + c * N, n_, p_, padded);
        forward(padded.data(), ahat.data() + c * spectral_);
    }
    simd::kernels().sym3_matvec(2 * spectral_, kernel_hat_.data(), reinterpret_cast<const double*>(ahat.data()),
                                reinterpret_cast<double*>(bhat.data()));
    std::fill(out.begin(), out.end(), 0.0);
    for (int c = 0; c < 3; ++c) inverse_add(bhat.data() + c * spectral_, out.data() + c * N);
}

}  // namespace vml
