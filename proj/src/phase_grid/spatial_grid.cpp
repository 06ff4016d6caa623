#include "vml/phase_grid/spatial_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "vml/error.hpp"

namespace vml {

struct SpatialGrid::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    ~Plans() {
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }
};

namespace {
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

SpatialGrid::SpatialGrid(double box_length, int n_x, std::array<bool, 3> active)
    : box_length_(box_length), n_x_(n_x), active_(active) {
    if (!(box_length > 0.0)) throw DomainError("box length must be positive");
    if (n_x < 1) throw DomainError("n_x must be positive");
    dims_ = 0;
    for (int a = 0; a < 3; ++a) {
        shape_[a] = active_[a] ? n_x : 1;
        dims_ += active_[a] ? 1 : 0;
    }
    size_ = static_cast<std::size_t>(shape_[0]) * shape_[1] * shape_[2];
    const double dx = box_length / n_x;
    cell_volume_ = std::pow(dx, dims_);

    freq_.resize(size_);
    kappa_.resize(size_);
    knorm_.resize(size_);
    conj_.resize(size_);
    const double base = 2.0 * std::numbers::pi / box_length;
    auto signed_freq = [](int i, int n) { return i <= n / 2 ? i : i - n; };
    for (int i = 0; i < shape_[0]; ++i)
        for (int j = 0; j < shape_[1]; ++j)
            for (int k = 0; k < shape_[2]; ++k) {
                const std::size_t m = (static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k;
                freq_[m] = {signed_freq(i, shape_[0]), signed_freq(j, shape_[1]), signed_freq(k, shape_[2])};
                double s = 0.0;
                for (int a = 0; a < 3; ++a) {
                    kappa_[m][a] = base * freq_[m][a];
                    s += kappa_[m][a] * kappa_[m][a];
                }
                knorm_[m] = std::sqrt(s);
                const int ci = (shape_[0] - i) % shape_[0];
                const int cj = (shape_[1] - j) % shape_[1];
                const int ck = (shape_[2] - k) % shape_[2];
                conj_[m] = (static_cast<std::size_t>(ci) * shape_[1] + cj) * shape_[2] + ck;
            }
    for (std::size_t m = 0; m < size_; ++m)
        if (conj_[m] >= m) half_.push_back(m);
}

SpatialGrid::~SpatialGrid() {
    std::lock_guard<std::mutex> g(fftw_planner_mutex());
    plan_cache_.clear();
}

std::array<double, 3> SpatialGrid::position(std::size_t m) const {
    const double dx = box_length_ / n_x_;
    const int k = static_cast<int>(m % shape_[2]);
    const int j = static_cast<int>((m / shape_[2]) % shape_[1]);
    const int i = static_cast<int>(m / (static_cast<std::size_t>(shape_[1]) * shape_[2]));
    return {i * dx, j * dx, k * dx};
}

const SpatialGrid::Plans& SpatialGrid::plans(std::size_t count) const {
    std::lock_guard<std::mutex> lock(plan_mutex_);
    auto it = plan_cache_.find(count);
    if (it != plan_cache_.end()) return *it->second;

    std::lock_guard<std::mutex> planner(fftw_planner_mutex());
    auto p = std::make_unique<Plans>();
    std::vector<int> dims;
    for (int a = 0; a < 3; ++a)
        if (active_[a]) dims.push_back(n_x_);
    if (dims.empty()) dims.push_back(1);
    const int howmany = static_cast<int>(count);
    const std::size_t total = size_ * count;
    fftw_complex* buf = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p->fwd = fftw_plan_many_dft(static_cast<int>(dims.size()), dims.data(), howmany, buf, nullptr, howmany, 1,
                                buf, nullptr, howmany, 1, FFTW_FORWARD, flags);
    p->inv = fftw_plan_many_dft(static_cast<int>(dims.size()), dims.data(), howmany, buf, nullptr, howmany, 1,
                                buf, nullptr, howmany, 1, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!p->fwd || !p->inv) throw Error("FFTW planning failed");
    auto& ref = *p;
    plan_cache_.emplace(count, std::move(p));
    return ref;
}

void SpatialGrid::execute(cplx* data, std::size_t count, bool fwd) const {
    const Plans& p = plans(count);
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(fwd ? p.fwd : p.inv, d, d);
    const double n = static_cast<double>(size_);
    const double scale = fwd ? std::sqrt(cell_volume_ / n) : 1.0 / std::sqrt(cell_volume_ * n);
    const std::size_t total = size_ * count;
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

void SpatialGrid::forward_batch(cplx* data, std::size_t count) const { execute(data, count, true); }
void SpatialGrid::inverse_batch(cplx* data, std::size_t count) const { execute(data, count, false); }

void SpatialGrid::forward(const cplx* in, cplx* out) const {
    if (in != out) std::copy(in, in + size_, out);
    execute(out, 1, true);
}

void SpatialGrid::inverse(const cplx* in, cplx* out) const {
    if (in != out) std::copy(in, in + size_, out);
    execute(out, 1, false);
}

std::vector<cplx> SpatialGrid::forward(std::span<const cplx> in) const {
    if (in.size() != size_) throw ShapeError("field size does not match spatial grid");
    std::vector<cplx> out(in.begin(), in.end());
    execute(out.data(), 1, true);
    return out;
}

std::vector<cplx> SpatialGrid::forward(std::span<const double> in) const {
    if (in.size() != size_) throw ShapeError("field size does not match spatial grid");
    std::vector<cplx> out(in.begin(), in.end());
    execute(out.data(), 1, true);
    return out;
}

std::vector<cplx> SpatialGrid::inverse(std::span<const cplx> in) const {
    if (in.size() != size_) throw ShapeError("field size does not match spatial grid");
    std::vector<cplx> out(in.begin(), in.end());
    execute(out.data(), 1, false);
    return out;
}

}  // namespace vml
