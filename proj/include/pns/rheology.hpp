#pragma once

#include <array>

#include "pns/field.hpp"

namespace pns {

// Power-law constitutive parameters. p = 2 is admitted for Newtonian
// cross-checks; mu = 0 selects the unregularized stress with S(0) = 0.
struct RheologyParams {
    double p = 5.0 / 3.0;
    double mu = 1e-3;

    void validate() const {
        if (!(p > 1.0 && p <= 2.0)) throw ArgumentError("RheologyParams: need 1 < p <= 2");
        if (!(mu >= 0.0 && mu < 1.0)) throw ArgumentError("RheologyParams: need 0 <= mu < 1");
    }
};

// S_mu(D) = (mu + |D|^2)^((p-2)/2) D, applied pointwise on the grid.
SymTensorField stress(const SymTensorField& D, const RheologyParams& params);

// Dense symmetric matrix for pointwise checks of the constitutive law.
struct SymMatrix {
    int d = 3;
    std::array<double, 9> a{}; // row-major d x d

    double& at(int i, int j) { return a[static_cast<std::size_t>(i * d + j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i * d + j)]; }
    double frob2() const {
        double s = 0.0;
        for (int i = 0; i < d * d; ++i) s += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
        return s;
    }
};

SymMatrix stress_matrix(const SymMatrix& D, const RheologyParams& params);

// Both sides of the monotonicity property of S_mu:
//   lhs   = (S_mu(A) - S_mu(B)) : (A - B)
//   lower = 3^((p-2)/2) |A-B|^2 (mu + |A|^2 + |B|^2)^((p-2)/2)
// The caller asserts lhs >= lower. Inputs must be symmetric.
struct MonotonicityGap {
    double lhs = 0.0;
    double lower_bound = 0.0;
};

MonotonicityGap monotonicity_gap(const SymMatrix& A, const SymMatrix& B,
                                 const RheologyParams& params);

// (S_mu(Dv), Dv) = integral (mu + |Dv|^2)^((p-2)/2) |Dv|^2 dx, evaluated on
// the 2x padded grid.
double dissipation(const VectorField& v, const RheologyParams& params);

// One padded-grid strain evaluation shared by the trajectory monitors.
struct StrainDiagnostics {
    double dv_p_p = 0.0;            // ||Dv||_p^p
    double dissipation = 0.0;       // (S_mu(Dv), Dv)
    double stress_potential = 0.0;  // (1/p) || (mu + |Dv|^2)^(1/2) ||_p^p
};

StrainDiagnostics strain_diagnostics(const VectorField& v, const RheologyParams& params);

} // namespace pns
