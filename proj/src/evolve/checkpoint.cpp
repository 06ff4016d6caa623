#include "vml/evolve/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "vml/error.hpp"

namespace vml {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'V', 'M', 'L', 'C', 'K', 'P', 'T', '1'};

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

void write_cplx(std::ofstream& out, const cplx* data, std::size_t n) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(cplx)));
}
void read_cplx(std::ifstream& in, cplx* data, std::size_t n, const std::string& path) {
    if (!in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(cplx))))
        throw IoError("truncated checkpoint payload in " + path);
}
}  // namespace

void save_checkpoint(const std::string& path, const PhaseState& s, std::uint64_t step, double x_sup,
                     const std::vector<double>& monitor) {
    if (s.f.space() != Space::fourier) throw DomainError("checkpoints store f in Fourier-x representation");
    unsigned char head[64] = {};
    std::memcpy(head, kMagic, 8);
    put<std::uint32_t>(head, 8, kCheckpointVersion);
    put<std::uint64_t>(head, 16, s.f.n_x());
    put<std::uint64_t>(head, 24, s.f.n_v());
    put<double>(head, 32, s.t);
    put<std::uint64_t>(head, 40, step);
    put<double>(head, 48, x_sup);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint " + path);
    out.write(reinterpret_cast<const char*>(head), 64);
    write_cplx(out, s.f.data(), s.f.size());
    for (int c = 0; c < 3; ++c) write_cplx(out, s.em.E[c].data(), s.em.size());
    for (int c = 0; c < 3; ++c) write_cplx(out, s.em.B[c].data(), s.em.size());
    const std::uint64_t count = monitor.size();
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    out.write(reinterpret_cast<const char*>(monitor.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!out) throw IoError("short write to checkpoint " + path);
}

Checkpoint load_checkpoint(const std::string& path, const Context& ctx) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint " + path);
    unsigned char head[64];
    if (!in.read(reinterpret_cast<char*>(head), 64)) throw IoError("truncated checkpoint header in " + path);
    if (std::memcmp(head, kMagic, 8) != 0) throw IoError("not a checkpoint: " + path);
    if (get<std::uint32_t>(head, 8) != kCheckpointVersion) throw IoError("unsupported checkpoint version in " + path);
    const auto nx = get<std::uint64_t>(head, 16), nv = get<std::uint64_t>(head, 24);
    if (nx != ctx.sgrid().size() || nv != ctx.vgrid().size())
        throw IoError("checkpoint " + path + " does not match the configured grids");
    Checkpoint ck;
    ck.state = PhaseState(ctx);
    ck.state.t = get<double>(head, 32);
    ck.step = get<std::uint64_t>(head, 40);
    ck.x_sup = get<double>(head, 48);
    read_cplx(in, ck.state.f.data(), ck.state.f.size(), path);
    for (int c = 0; c < 3; ++c) read_cplx(in, ck.state.em.E[c].data(), ck.state.em.size(), path);
    for (int c = 0; c < 3; ++c) read_cplx(in, ck.state.em.B[c].data(), ck.state.em.size(), path);
    std::uint64_t count = 0;
    if (!in.read(reinterpret_cast<char*>(&count), sizeof(count)) || count > (1u << 20))
        throw IoError("corrupt checkpoint monitor block in " + path);
    ck.monitor.resize(count);
    if (!in.read(reinterpret_cast<char*>(ck.monitor.data()), static_cast<std::streamsize>(count * sizeof(double))))
        throw IoError("truncated checkpoint monitor block in " + path);
    return ck;
}

}  // namespace vml
