#include "pns/rheology.hpp"

#include <cmath>
#include <limits>

#include "pns/operators.hpp"

namespace pns {

namespace {

// (mu + |D|^2)^((p-2)/2) with the continuous extension 0 at |D| = 0, mu = 0.
inline double viscosity_factor(double mu_plus_d2, double p) {
    if (mu_plus_d2 < std::numeric_limits<double>::min()) return 0.0;
    return std::pow(mu_plus_d2, 0.5 * (p - 2.0));
}

} // namespace

SymTensorField stress(const SymTensorField& D, const RheologyParams& params) {
    params.validate();
    SymTensorField S(D.grid, D.dim);
    const std::size_t total = D.grid.total();
    for (std::size_t x = 0; x < total; ++x) {
        double f = viscosity_factor(params.mu + D.frob2_at(x), params.p);
        for (std::size_t c = 0; c < D.comp.size(); ++c) S.comp[c][x] = f * D.comp[c][x];
    }
    return S;
}

SymMatrix stress_matrix(const SymMatrix& D, const RheologyParams& params) {
    params.validate();
    SymMatrix S = D;
    double f = viscosity_factor(params.mu + D.frob2(), params.p);
    for (auto& v : S.a) v *= f;
    return S;
}

MonotonicityGap monotonicity_gap(const SymMatrix& A, const SymMatrix& B,
                                 const RheologyParams& params) {
    params.validate();
    if (A.d != B.d) throw ArgumentError("monotonicity_gap: dimension mismatch");
    for (int i = 0; i < A.d; ++i)
        for (int j = i + 1; j < A.d; ++j) {
            if (std::abs(A.at(i, j) - A.at(j, i)) > 1e-12 * (1.0 + std::abs(A.at(i, j))) ||
                std::abs(B.at(i, j) - B.at(j, i)) > 1e-12 * (1.0 + std::abs(B.at(i, j))))
                throw ArgumentError("monotonicity_gap: inputs must be symmetric");
        }

    SymMatrix SA = stress_matrix(A, params);
    SymMatrix SB = stress_matrix(B, params);
    MonotonicityGap out;
    double e2 = 0.0;
    for (int i = 0; i < A.d * A.d; ++i) {
        double e = A.a[static_cast<std::size_t>(i)] - B.a[static_cast<std::size_t>(i)];
        out.lhs += (SA.a[static_cast<std::size_t>(i)] - SB.a[static_cast<std::size_t>(i)]) * e;
        e2 += e * e;
    }
    double base = params.mu + A.frob2() + B.frob2();
    out.lower_bound = std::pow(3.0, 0.5 * (params.p - 2.0)) * e2 *
                      viscosity_factor(base, params.p);
    return out;
}

double dissipation(const VectorField& v, const RheologyParams& params) {
    params.validate();
    SymTensorField D = sym_gradient(v, 2);
    const std::size_t total = D.grid.total();
    double acc = 0.0;
    for (std::size_t x = 0; x < total; ++x) {
        double d2 = D.frob2_at(x);
        acc += viscosity_factor(params.mu + d2, params.p) * d2;
    }
    return acc / static_cast<double>(total);
}

StrainDiagnostics strain_diagnostics(const VectorField& v, const RheologyParams& params) {
    params.validate();
    SymTensorField D = sym_gradient(v, 2);
    const std::size_t total = D.grid.total();
    StrainDiagnostics out;
    double diss = 0.0, pp = 0.0, pot = 0.0;
    for (std::size_t x = 0; x < total; ++x) {
        double d2 = D.frob2_at(x);
        diss += viscosity_factor(params.mu + d2, params.p) * d2;
        pp += std::pow(d2, 0.5 * params.p);
        pot += std::pow(params.mu + d2, 0.5 * params.p);
    }
    double inv = 1.0 / static_cast<double>(total);
    out.dissipation = diss * inv;
    out.dv_p_p = pp * inv;
    out.stress_potential = pot * inv / params.p;
    return out;
}

} // namespace pns
