#include "pns/norms.hpp"

#include <cmath>

#include "pns/operators.hpp"

namespace pns {

namespace {

double quad_pow_sum(const std::vector<const std::vector<double>*>& comps,
                    const std::vector<double>& weights, std::size_t total, double q) {
    double acc = 0.0;
    for (std::size_t x = 0; x < total; ++x) {
        double m2 = 0.0;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            double v = (*comps[c])[x];
            m2 += weights[c] * v * v;
        }
        acc += std::pow(m2, 0.5 * q);
    }
    return acc;
}

} // namespace

double lp_norm(const GridField& samples, double q) {
    if (q < 1.0) throw ArgumentError("lp_norm: q must be >= 1");
    std::vector<const std::vector<double>*> comps;
    std::vector<double> w(samples.ncomp, 1.0);
    for (const auto& c : samples.comp) comps.push_back(&c);
    double s = quad_pow_sum(comps, w, samples.grid.total(), q);
    return std::pow(s / static_cast<double>(samples.grid.total()), 1.0 / q);
}

double lp_norm(const SymTensorField& samples, double q) {
    if (q < 1.0) throw ArgumentError("lp_norm: q must be >= 1");
    std::vector<const std::vector<double>*> comps;
    std::vector<double> w;
    for (int i = 0; i < samples.dim; ++i)
        for (int j = i; j < samples.dim; ++j) {
            comps.push_back(&samples.comp[SymTensorField::index(i, j, samples.dim)]);
            w.push_back(i == j ? 1.0 : 2.0);
        }
    double s = quad_pow_sum(comps, w, samples.grid.total(), q);
    return std::pow(s / static_cast<double>(samples.grid.total()), 1.0 / q);
}

double inner_product(const GridField& a, const GridField& b) {
    if (!(a.grid == b.grid) || a.ncomp != b.ncomp)
        throw ConfigError("inner_product: sample shapes do not match");
    double s = 0.0;
    for (int c = 0; c < a.ncomp; ++c)
        for (std::size_t x = 0; x < a.grid.total(); ++x) s += a.comp[c][x] * b.comp[c][x];
    return s / static_cast<double>(a.grid.total());
}

double sup_norm(const GridField& samples) {
    double worst = 0.0;
    for (std::size_t x = 0; x < samples.grid.total(); ++x) {
        double m2 = 0.0;
        for (int c = 0; c < samples.ncomp; ++c) {
            double v = samples.comp[c][x];
            m2 += v * v;
        }
        worst = std::max(worst, m2);
    }
    return std::sqrt(worst);
}

double field_lp_norm(const VectorField& v, double q, int pad_factor) {
    return lp_norm(to_grid_padded(v, pad_factor), q);
}

} // namespace pns
