#include "pns/random_field.hpp"

#include <cmath>
#include <random>

#include "pns/operators.hpp"

namespace pns {

VectorField random_solenoidal(const TorusGrid& grid, std::uint64_t seed, double spectral_decay,
                              double grad_l2_sq_target) {
    if (grad_l2_sq_target < 0.0)
        throw ArgumentError("random_solenoidal: target must be >= 0");
    VectorField v(grid);
    if (grad_l2_sq_target == 0.0) return v;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t total = grid.total();
    for (int c = 0; c < grid.dim; ++c) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            auto md = grid.mode(idx);
            double re = gauss(rng), im = gauss(rng); // fixed draw order keeps determinism
            if (md.nyquist || md.k2 == 0) continue;
            double amp = std::pow(std::sqrt(static_cast<double>(md.k2)), -spectral_decay);
            v.comp[c][idx] = amp * cplx(re, im);
        }
    }
    v.enforce_spectral_invariants();
    v = project_solenoidal(v);

    double cur = v.grad_l2_norm_sq();
    if (cur <= 0.0) throw ArgumentError("random_solenoidal: degenerate draw");
    double scale = std::sqrt(grad_l2_sq_target / cur);
    for (auto& cv : v.comp)
        for (auto& z : cv) z *= scale;
    return v;
}

} // namespace pns
