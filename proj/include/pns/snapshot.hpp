#pragma once

#include <string>

#include "pns/field.hpp"

namespace pns {

// FieldSnapshot binary format:
//   8-byte magic "PNSSNAP1"
//   uint64 little-endian header length
//   UTF-8 JSON header {"version":1,"d":..,"N":..,"p":..,"mu":..,"t":..,
//                      "layout":"component-major"}
//   d * N^d little-endian float64 real-space samples, component-major.
struct SnapshotMeta {
    int version = 1;
    int d = 2;
    int n = 0;
    double p = 2.0;
    double mu = 0.0;
    double t = 0.0;
};

struct Snapshot {
    SnapshotMeta meta;
    GridField samples;
    VectorField field; // to_spectral(samples), invariants re-enforced
};

void write_snapshot(const std::string& path, const VectorField& v, double p, double mu, double t);
void write_snapshot_samples(const std::string& path, const GridField& samples, const SnapshotMeta& meta);
Snapshot read_snapshot(const std::string& path);

} // namespace pns
