#include "pns/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace pns::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf_in = nullptr;
    fftw_complex* buf_out = nullptr;
    std::size_t total = 0;
};

std::mutex g_mutex;

PlanPair& plans_for(const TorusGrid& g) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    auto key = std::make_pair(g.dim, g.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    PlanPair pp;
    pp.total = g.total();
    pp.buf_in = fftw_alloc_complex(pp.total);
    pp.buf_out = fftw_alloc_complex(pp.total);
    if (g.dim == 2) {
        pp.fwd = fftw_plan_dft_2d(g.n, g.n, pp.buf_in, pp.buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
        pp.bwd = fftw_plan_dft_2d(g.n, g.n, pp.buf_in, pp.buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        pp.fwd = fftw_plan_dft_3d(g.n, g.n, g.n, pp.buf_in, pp.buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
        pp.bwd = fftw_plan_dft_3d(g.n, g.n, g.n, pp.buf_in, pp.buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    return cache.emplace(key, pp).first->second;
}

void run(const TorusGrid& g, const std::vector<cplx>& in, std::vector<cplx>& out, bool forward_dir) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanPair& pp = plans_for(g);
    out.resize(pp.total);
    std::memcpy(pp.buf_in, in.data(), pp.total * sizeof(cplx));
    fftw_execute(forward_dir ? pp.fwd : pp.bwd);
    std::memcpy(out.data(), pp.buf_out, pp.total * sizeof(cplx));
}

} // namespace

void backward(const TorusGrid& g, const std::vector<cplx>& spectral, std::vector<cplx>& grid) {
    run(g, spectral, grid, false);
}

void forward(const TorusGrid& g, const std::vector<cplx>& grid, std::vector<cplx>& spectral) {
    run(g, grid, spectral, true);
    const double scale = 1.0 / static_cast<double>(g.total());
    for (auto& c : spectral) c *= scale;
}

} // namespace pns::fft
