#include "vml/evolve/state.hpp"

#include <cmath>
#include <filesystem>

#include "vml/landau/sigma_cache.hpp"

namespace vml {

std::shared_ptr<const Context> make_context(const RunConfig& config, const std::string& cache_dir) {
    config.validate();
    auto ctx = std::make_shared<Context>();
    ctx->config = config;
    ctx->space = std::make_shared<const SpatialGrid>(config.box_length, config.n_x, config.active);
    const VelocityGrid vg(config.n_v, config.v_max);
    if (cache_dir.empty()) {
        ctx->tables = build_collision_tables(vg, config.weight.gamma);
    } else {
        const std::string path =
            (std::filesystem::path(cache_dir) / sigma_cache_name(config.n_v, config.v_max, config.weight.gamma)).string();
        if (auto cached = load_sigma_cache(path, vg, config.weight.gamma)) {
            ctx->tables = std::make_shared<const CollisionTables>(vg, config.weight.gamma, std::move(*cached));
        } else {
            ctx->tables = build_collision_tables(vg, config.weight.gamma);
            std::filesystem::create_directories(cache_dir);
            save_sigma_cache(path, *ctx->tables);
        }
    }
    ctx->projection = std::make_shared<const Projection>(vg);
    return ctx;
}

PhaseState::PhaseState(const Context& ctx)
    : f(ctx.sgrid().size(), ctx.vgrid().size(), Space::fourier), em(ctx.sgrid().size()) {}

bool PhaseState::all_finite() const {
    if (!f.all_finite() || !std::isfinite(t)) return false;
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 0; m < em.size(); ++m)
            if (!std::isfinite(em.E[c][m].real()) || !std::isfinite(em.E[c][m].imag()) ||
                !std::isfinite(em.B[c][m].real()) || !std::isfinite(em.B[c][m].imag()))
                return false;
    return true;
}

DistributionPair physical_f(const PhaseState& s, const Context& ctx) {
    DistributionPair out = s.f;
    if (out.space() == Space::fourier) to_physical(out, ctx.sgrid());
    return out;
}

}  // namespace vml
