#pragma once

#include <complex>
#include <vector>

#include "pns/fft.hpp"
#include "pns/grid.hpp"

namespace pns {

// Real samples on a collocation grid (possibly the padded one); ncomp
// components stored component-major.
struct GridField {
    TorusGrid grid;
    int ncomp = 0;
    std::vector<std::vector<double>> comp;

    GridField() = default;
    GridField(const TorusGrid& g, int nc)
        : grid(g), ncomp(nc), comp(nc, std::vector<double>(g.total(), 0.0)) {}
};

// Pointwise symmetric tensor samples; the dim*(dim+1)/2 distinct components
// are stored once, component-major.
struct SymTensorField {
    TorusGrid grid;
    int dim = 0;
    std::vector<std::vector<double>> comp;

    SymTensorField() = default;
    SymTensorField(const TorusGrid& g, int d)
        : grid(g), dim(d), comp(ncomp(d), std::vector<double>(g.total(), 0.0)) {}

    static int ncomp(int d) { return d * (d + 1) / 2; }

    // (i,j) -> storage slot; 2D: xx,xy,yy  3D: xx,xy,xz,yy,yz,zz
    static int index(int i, int j, int d) {
        if (i > j) std::swap(i, j);
        int base = 0;
        for (int r = 0; r < i; ++r) base += d - r;
        return base + (j - i);
    }

    // |T(x)|^2 with the off-diagonal double count of the Frobenius norm.
    double frob2_at(std::size_t x) const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double v = comp[index(i, j, dim)][x];
                s += (i == j) ? v * v : 2.0 * v * v;
            }
        return s;
    }
};

// Mean-zero real velocity field on the torus held as complex spectral
// coefficients per retained wavenumber, one array per component.
struct VectorField {
    TorusGrid grid;
    std::vector<std::vector<cplx>> comp;

    VectorField() = default;
    explicit VectorField(const TorusGrid& g)
        : grid(g), comp(g.dim, std::vector<cplx>(g.total(), cplx(0.0, 0.0))) {}

    static VectorField zero(const TorusGrid& g) { return VectorField(g); }

    int dim() const { return grid.dim; }

    // Re-impose exact realness (Hermitian symmetry), zero mean and zero
    // Nyquist planes. Idempotent.
    void enforce_spectral_invariants();

    // Parseval norms; exact for the retained band.
    double l2_norm_sq() const;
    double l2_norm() const;
    double grad_l2_norm_sq() const; // ||grad v||_2^2 = sum (2 pi |k|)^2 |v^(k)|^2

    // max_k |k . v^(k)| / max(|v^(k)|, eps) over nonzero modes.
    double max_divergence_rel() const;

    bool same_shape(const VectorField& o) const { return grid == o.grid && comp.size() == o.comp.size(); }
};

// Linear-space arithmetic used by the integrators.
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
void axpy(VectorField& y, double a, const VectorField& x); // y += a*x
double l2_distance(const VectorField& a, const VectorField& b);
double h1_seminorm_distance(const VectorField& a, const VectorField& b);

} // namespace pns
