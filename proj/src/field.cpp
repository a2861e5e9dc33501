#include "pns/field.hpp"

#include <algorithm>
#include <cmath>

namespace pns {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void VectorField::enforce_spectral_invariants() {
    const int d = grid.dim;
    const std::size_t total = grid.total();
    for (int c = 0; c < d; ++c) {
        auto& a = comp[c];
        for (std::size_t idx = 0; idx < total; ++idx) {
            auto m = grid.unflatten(idx);
            bool ny = false;
            for (int ax = 0; ax < d; ++ax) ny = ny || grid.is_nyquist_index(m[ax]);
            if (ny) {
                a[idx] = cplx(0.0, 0.0);
                continue;
            }
            // pair each mode with its mirror once
            std::array<int, 3> mm{0, 0, 0};
            for (int ax = 0; ax < d; ++ax) mm[ax] = m[ax] == 0 ? 0 : grid.n - m[ax];
            std::size_t midx = grid.flatten(mm);
            if (midx < idx) continue;
            if (midx == idx) { // self-conjugate mode (k = -k): must be real
                a[idx] = cplx(a[idx].real(), 0.0);
                continue;
            }
            cplx avg = 0.5 * (a[idx] + std::conj(a[midx]));
            a[idx] = avg;
            a[midx] = std::conj(avg);
        }
        a[0] = cplx(0.0, 0.0); // zero mean
    }
}

double VectorField::l2_norm_sq() const {
    double s = 0.0;
    for (const auto& a : comp)
        for (const auto& c : a) s += std::norm(c);
    return s;
}

double VectorField::l2_norm() const { return std::sqrt(l2_norm_sq()); }

double VectorField::grad_l2_norm_sq() const {
    const std::size_t total = grid.total();
    double s = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto md = grid.mode(idx);
        if (md.nyquist || md.k2 == 0) continue;
        double w = kTwoPi * kTwoPi * static_cast<double>(md.k2);
        for (int c = 0; c < grid.dim; ++c) s += w * std::norm(comp[c][idx]);
    }
    return s;
}

double VectorField::max_divergence_rel() const {
    const std::size_t total = grid.total();
    double worst = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto md = grid.mode(idx);
        if (md.nyquist || md.k2 == 0) continue;
        cplx div(0.0, 0.0);
        double mag = 0.0;
        for (int c = 0; c < grid.dim; ++c) {
            div += static_cast<double>(md.k[c]) * comp[c][idx];
            mag += std::norm(comp[c][idx]);
        }
        mag = std::sqrt(mag) * std::sqrt(static_cast<double>(md.k2));
        if (mag > 1e-300) worst = std::max(worst, std::abs(div) / mag);
    }
    return worst;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (std::size_t c = 0; c < out.comp.size(); ++c)
        for (std::size_t i = 0; i < out.comp[c].size(); ++i) out.comp[c][i] += b.comp[c][i];
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (std::size_t c = 0; c < out.comp.size(); ++c)
        for (std::size_t i = 0; i < out.comp[c].size(); ++i) out.comp[c][i] -= b.comp[c][i];
    return out;
}

VectorField operator*(double s, const VectorField& a) {
    VectorField out = a;
    for (auto& cvec : out.comp)
        for (auto& c : cvec) c *= s;
    return out;
}

void axpy(VectorField& y, double a, const VectorField& x) {
    for (std::size_t c = 0; c < y.comp.size(); ++c)
        for (std::size_t i = 0; i < y.comp[c].size(); ++i) y.comp[c][i] += a * x.comp[c][i];
}

double l2_distance(const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.comp.size(); ++c)
        for (std::size_t i = 0; i < a.comp[c].size(); ++i) s += std::norm(a.comp[c][i] - b.comp[c][i]);
    return std::sqrt(s);
}

double h1_seminorm_distance(const VectorField& a, const VectorField& b) {
    const std::size_t total = a.grid.total();
    double s = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto md = a.grid.mode(idx);
        if (md.nyquist || md.k2 == 0) continue;
        double w = kTwoPi * kTwoPi * static_cast<double>(md.k2);
        for (int c = 0; c < a.grid.dim; ++c) s += w * std::norm(a.comp[c][idx] - b.comp[c][idx]);
    }
    return std::sqrt(s);
}

} // namespace pns
