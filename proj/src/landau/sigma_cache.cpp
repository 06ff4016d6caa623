#include "vml/landau/sigma_cache.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vml/error.hpp"

namespace vml {

static_assert(std::endian::native == std::endian::little, "cache I/O assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'V', 'M', 'L', 'S', 'I', 'G', 'M', 'A'};

template <class T>
void put(unsigned char* buf, std::size_t off, T v) {
    std::memcpy(buf + off, &v, sizeof(T));
}
template <class T>
T get(const unsigned char* buf, std::size_t off) {
    T v;
    std::memcpy(&v, buf + off, sizeof(T));
    return v;
}
}  // namespace

std::string sigma_cache_name(int n_v, double v_max, double gamma) {
    std::ostringstream name;
    name.precision(17);
    name << "sigma_n" << n_v << "_v" << v_max << "_g" << gamma << ".bin";
    return name.str();
}

void save_sigma_cache(const std::string& path, const CollisionTables& tables) {
    unsigned char head[64] = {};
    std::memcpy(head, kMagic, 8);
    put<std::uint32_t>(head, 8, kSigmaCacheVersion);
    put<std::uint32_t>(head, 12, static_cast<std::uint32_t>(tables.grid().n()));
    put<double>(head, 16, tables.gamma());
    put<double>(head, 24, tables.grid().v_max());
    put<std::uint64_t>(head, 32, 6);
    put<std::uint64_t>(head, 40, tables.size());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write sigma cache " + path);
    out.write(reinterpret_cast<const char*>(head), 64);
    const auto s = tables.sigma();
    out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(double)));
    if (!out) throw IoError("short write to sigma cache " + path);
}

std::optional<std::vector<double>> load_sigma_cache(const std::string& path, const VelocityGrid& grid,
                                                    double gamma) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    unsigned char head[64];
    if (!in.read(reinterpret_cast<char*>(head), 64)) throw IoError("truncated sigma cache header in " + path);
    if (std::memcmp(head, kMagic, 8) != 0) throw IoError("not a sigma cache: " + path);
    if (get<std::uint32_t>(head, 8) != kSigmaCacheVersion) throw IoError("unsupported sigma cache version in " + path);
    if (get<std::uint32_t>(head, 12) != static_cast<std::uint32_t>(grid.n()) || get<double>(head, 16) != gamma ||
        get<double>(head, 24) != grid.v_max())
        return std::nullopt;
    const auto comps = get<std::uint64_t>(head, 32);
    const auto count = get<std::uint64_t>(head, 40);
    if (comps != 6 || count != grid.size()) throw IoError("inconsistent sigma cache extents in " + path);
    std::vector<double> data(comps * count);
    if (!in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double))))
        throw IoError("truncated sigma cache payload in " + path);
    return data;
}

}  // namespace vml
