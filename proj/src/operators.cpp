#include "pns/operators.hpp"

#include <cmath>
#include <functional>

namespace pns {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Place the retained modes of `src` (grid g) into the spectral array of a
// finer grid `gp`. Inverse is read_band.
void embed_band(const TorusGrid& g, const std::vector<cplx>& src, const TorusGrid& gp,
                std::vector<cplx>& dst) {
    dst.assign(gp.total(), cplx(0.0, 0.0));
    const std::size_t total = g.total();
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto md = g.mode(idx);
        if (md.nyquist) continue;
        std::array<int, 3> mp{0, 0, 0};
        for (int ax = 0; ax < g.dim; ++ax) mp[ax] = md.k[ax] >= 0 ? md.k[ax] : md.k[ax] + gp.n;
        dst[gp.flatten(mp)] = src[idx];
    }
}

void read_band(const TorusGrid& gp, const std::vector<cplx>& src, const TorusGrid& g,
               std::vector<cplx>& dst) {
    dst.assign(g.total(), cplx(0.0, 0.0));
    const std::size_t total = g.total();
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto md = g.mode(idx);
        if (md.nyquist) continue;
        std::array<int, 3> mp{0, 0, 0};
        for (int ax = 0; ax < g.dim; ++ax) mp[ax] = md.k[ax] >= 0 ? md.k[ax] : md.k[ax] + gp.n;
        dst[idx] = src[gp.flatten(mp)];
    }
}

// Inverse-transform one spectral component (optionally with a per-mode
// multiplier) onto the grid `gout` (>= band of g).
void synth_component(const TorusGrid& g, const std::vector<cplx>& spec, const TorusGrid& gout,
                     std::vector<double>& out,
                     const std::function<cplx(const TorusGrid::Mode&)>& mult = nullptr) {
    std::vector<cplx> work(g.total());
    if (mult) {
        for (std::size_t idx = 0; idx < g.total(); ++idx) {
            auto md = g.mode(idx);
            work[idx] = md.nyquist ? cplx(0, 0) : mult(md) * spec[idx];
        }
    } else {
        work = spec;
    }
    std::vector<cplx> embedded;
    const std::vector<cplx>* src = &work;
    if (!(gout == g)) {
        embed_band(g, work, gout, embedded);
        src = &embedded;
    }
    std::vector<cplx> grid_c;
    fft::backward(gout, *src, grid_c);
    out.resize(gout.total());
    for (std::size_t i = 0; i < gout.total(); ++i) out[i] = grid_c[i].real();
}

} // namespace

GridField to_grid(const VectorField& v) { return to_grid_padded(v, 1); }

GridField to_grid_padded(const VectorField& v, int pad_factor) {
    TorusGrid gout = pad_factor == 1 ? v.grid : v.grid.padded(pad_factor);
    GridField out(gout, v.dim());
    for (int c = 0; c < v.dim(); ++c) synth_component(v.grid, v.comp[c], gout, out.comp[c]);
    return out;
}

VectorField to_spectral(const GridField& samples) {
    if (samples.ncomp != samples.grid.dim)
        throw ConfigError("to_spectral: component count does not match grid dimension");
    VectorField v(samples.grid);
    std::vector<cplx> grid_c(samples.grid.total());
    for (int c = 0; c < samples.ncomp; ++c) {
        for (std::size_t i = 0; i < grid_c.size(); ++i) grid_c[i] = cplx(samples.comp[c][i], 0.0);
        fft::forward(samples.grid, grid_c, v.comp[c]);
    }
    v.enforce_spectral_invariants();
    return v;
}

VectorField from_grid_truncated(const GridField& samples, const TorusGrid& target) {
    if (samples.ncomp != target.dim)
        throw ConfigError("from_grid_truncated: component count does not match target dimension");
    VectorField v(target);
    std::vector<cplx> grid_c(samples.grid.total());
    std::vector<cplx> spec;
    for (int c = 0; c < samples.ncomp; ++c) {
        for (std::size_t i = 0; i < grid_c.size(); ++i) grid_c[i] = cplx(samples.comp[c][i], 0.0);
        fft::forward(samples.grid, grid_c, spec);
        read_band(samples.grid, spec, target, v.comp[c]);
    }
    v.enforce_spectral_invariants();
    return v;
}

VectorField project_solenoidal(const VectorField& v) {
    VectorField out = v;
    const int d = v.dim();
    const std::size_t total = v.grid.total();
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto md = v.grid.mode(idx);
        if (md.k2 == 0) {
            for (int c = 0; c < d; ++c) out.comp[c][idx] = cplx(0, 0);
            continue;
        }
        if (md.nyquist) continue;
        cplx kdotv(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdotv += static_cast<double>(md.k[c]) * v.comp[c][idx];
        const double inv_k2 = 1.0 / static_cast<double>(md.k2);
        for (int c = 0; c < d; ++c)
            out.comp[c][idx] -= static_cast<double>(md.k[c]) * kdotv * inv_k2;
    }
    out.enforce_spectral_invariants();
    return out;
}

GridField gradient(const VectorField& v, int pad_factor) {
    const int d = v.dim();
    TorusGrid gout = pad_factor == 1 ? v.grid : v.grid.padded(pad_factor);
    GridField out(gout, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            synth_component(v.grid, v.comp[i], gout, out.comp[i * d + j],
                            [j](const TorusGrid::Mode& md) {
                                return cplx(0.0, kTwoPi * md.k[j]);
                            });
        }
    return out;
}

SymTensorField sym_gradient(const VectorField& v, int pad_factor) {
    const int d = v.dim();
    GridField g = gradient(v, pad_factor);
    SymTensorField out(g.grid, d);
    const std::size_t total = g.grid.total();
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            auto& dst = out.comp[SymTensorField::index(i, j, d)];
            const auto& gij = g.comp[i * d + j];
            const auto& gji = g.comp[j * d + i];
            for (std::size_t x = 0; x < total; ++x) dst[x] = 0.5 * (gij[x] + gji[x]);
        }
    return out;
}

GridField second_gradient(const VectorField& v, int pad_factor) {
    const int d = v.dim();
    TorusGrid gout = pad_factor == 1 ? v.grid : v.grid.padded(pad_factor);
    const int nsym = SymTensorField::ncomp(d);
    GridField out(gout, nsym * d);
    std::vector<cplx> spec(v.grid.total());
    std::vector<cplx> embedded, grid_c;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const int s = SymTensorField::index(i, j, d);
            for (int l = 0; l < d; ++l) {
                // d_l (Dv)_ij = -2 pi^2 k_l (k_j v_i + k_i v_j) in spectral space
                for (std::size_t idx = 0; idx < v.grid.total(); ++idx) {
                    auto md = v.grid.mode(idx);
                    if (md.nyquist) {
                        spec[idx] = cplx(0, 0);
                        continue;
                    }
                    double w = -2.0 * M_PI * M_PI * md.k[l];
                    spec[idx] = w * (static_cast<double>(md.k[j]) * v.comp[i][idx] +
                                     static_cast<double>(md.k[i]) * v.comp[j][idx]);
                }
                const std::vector<cplx>* src = &spec;
                if (!(gout == v.grid)) {
                    embed_band(v.grid, spec, gout, embedded);
                    src = &embedded;
                }
                fft::backward(gout, *src, grid_c);
                auto& dst = out.comp[s * d + l];
                for (std::size_t x = 0; x < gout.total(); ++x) dst[x] = grid_c[x].real();
            }
        }
    return out;
}

std::vector<cplx> forward_truncated(const TorusGrid& gpad, const std::vector<double>& samples,
                                    const TorusGrid& target) {
    std::vector<cplx> grid_c(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) grid_c[i] = cplx(samples[i], 0.0);
    std::vector<cplx> spec, out;
    fft::forward(gpad, grid_c, spec);
    read_band(gpad, spec, target, out);
    return out;
}

GridField divergence(const VectorField& v) {
    GridField out(v.grid, 1);
    std::vector<cplx> spec(v.grid.total(), cplx(0, 0));
    for (std::size_t idx = 0; idx < v.grid.total(); ++idx) {
        auto md = v.grid.mode(idx);
        if (md.nyquist) continue;
        for (int c = 0; c < v.dim(); ++c)
            spec[idx] += cplx(0.0, kTwoPi * md.k[c]) * v.comp[c][idx];
    }
    std::vector<cplx> grid_c;
    fft::backward(v.grid, spec, grid_c);
    for (std::size_t i = 0; i < v.grid.total(); ++i) out.comp[0][i] = grid_c[i].real();
    return out;
}

} // namespace pns
