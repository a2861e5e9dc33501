#include "pns/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "pns/operators.hpp"

namespace pns {

namespace {
constexpr char kMagic[8] = {'P', 'N', 'S', 'S', 'N', 'A', 'P', '1'};
}

void write_snapshot_samples(const std::string& path, const GridField& samples,
                            const SnapshotMeta& meta) {
    nlohmann::json hdr{{"version", meta.version}, {"d", meta.d},   {"N", meta.n},
                       {"p", meta.p},             {"mu", meta.mu}, {"t", meta.t},
                       {"layout", "component-major"}};
    std::string hs = hdr.dump();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("write_snapshot: cannot open " + path);
    out.write(kMagic, 8);
    std::uint64_t len = hs.size();
    out.write(reinterpret_cast<const char*>(&len), 8);
    out.write(hs.data(), static_cast<std::streamsize>(hs.size()));
    for (const auto& c : samples.comp)
        out.write(reinterpret_cast<const char*>(c.data()),
                  static_cast<std::streamsize>(c.size() * sizeof(double)));
    if (!out) throw ConfigError("write_snapshot: short write to " + path);
}

void write_snapshot(const std::string& path, const VectorField& v, double p, double mu, double t) {
    SnapshotMeta meta;
    meta.d = v.grid.dim;
    meta.n = v.grid.n;
    meta.p = p;
    meta.mu = mu;
    meta.t = t;
    write_snapshot_samples(path, to_grid(v), meta);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_snapshot: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw ConfigError("read_snapshot: bad magic in " + path);
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 8);
    if (!in || len > (1u << 20)) throw ConfigError("read_snapshot: bad header length");
    std::string hs(len, '\0');
    in.read(hs.data(), static_cast<std::streamsize>(len));
    nlohmann::json hdr = nlohmann::json::parse(hs);

    Snapshot snap;
    snap.meta.version = hdr.at("version").get<int>();
    snap.meta.d = hdr.at("d").get<int>();
    snap.meta.n = hdr.at("N").get<int>();
    snap.meta.p = hdr.at("p").get<double>();
    snap.meta.mu = hdr.at("mu").get<double>();
    snap.meta.t = hdr.at("t").get<double>();
    if (hdr.at("layout").get<std::string>() != "component-major")
        throw ConfigError("read_snapshot: unsupported layout");

    TorusGrid grid(snap.meta.d, snap.meta.n);
    snap.samples = GridField(grid, grid.dim);
    for (auto& c : snap.samples.comp) {
        in.read(reinterpret_cast<char*>(c.data()),
                static_cast<std::streamsize>(c.size() * sizeof(double)));
        if (!in) throw ConfigError("read_snapshot: truncated payload in " + path);
    }
    snap.field = to_spectral(snap.samples);
    return snap;
}

} // namespace pns
