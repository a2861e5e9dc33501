#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "pns/field.hpp"

namespace pns {

// ||grad v||_2 = sqrt(2) ||Dv||_2 exactly for mean-zero solenoidal periodic
// fields, so the Korn constant is pinned rather than estimated.
double korn_constant(int dim);

// The paper-level symbol C_S covers several distinct embeddings; each role
// is estimated separately. Stored normalizations follow the usage sites:
//   interpolation    : ||grad v||_3 <= c ||grad v||_2^a ||grad Dv||_{4/(4-p)}^(1-a)
//   grad_l2          : ||grad v||_2^2 <= C ||grad Dv||_{4/(4-p)}^2
//   sup_norm         : ||v||_inf^2   <= C ||grad Dv||_{4/(4-p)}^2
//   lemma2_embedding : ||v||_{4/(4-p)} <= c ||Dv||_p
//   advection        : |(v.grad v, w)| <= c ||grad w||_2 ||grad v||_{4/(4-p)}^2
//   extinction       : ||v||_2^p <= C ||Dv||_p^p
enum class SobolevRole {
    interpolation,
    grad_l2,
    sup_norm,
    lemma2_embedding,
    advection,
    extinction,
};

SobolevRole sobolev_role_from_string(const std::string& name);
std::string to_string(SobolevRole role);

struct EstimatorOptions {
    int samples = 1000;
    int ascent_iters = 120;
    double safety = 1.1;
};

struct SobolevTable {
    double interpolation = 0.0;
    double grad_l2 = 0.0;
    double sup_norm = 0.0;
    double lemma2_embedding = 0.0;
    double advection = 0.0;
    double extinction = 0.0;

    double get(SobolevRole role) const;
};

// Maximize the role's Rayleigh quotient over random band-limited solenoidal
// fields, refine the best sample by gradient ascent on the log-quotient,
// and return the refined maximum times the safety factor. Deterministic
// for a fixed seed.
double estimate_sobolev_constant(const TorusGrid& grid, double p, SobolevRole role,
                                 std::uint64_t seed, const EstimatorOptions& opts = {});
SobolevTable estimate_all_roles(const TorusGrid& grid, double p, std::uint64_t seed,
                                const EstimatorOptions& opts = {});

// Raw quotient of one role for a given field (stored normalization).
double sobolev_quotient(SobolevRole role, const VectorField& v, double p);

struct LambdaResult {
    double lambda = 0.0;
    std::array<double, 3> branches{};
    int active_branch = 0; // 1-based, matching the order in the threshold min
};

// Lambda = 0.99 * min of the three threshold branches (the smallness
// condition requires strict inequality).
LambdaResult lambda_threshold(double p, double C_S, double C_K);

// Largest K with C_S K^2 2^(2-p) <= p(p-1) Lambda^(p-1) / 8 (equality).
double force_bound(double p, double lambda, double C_S);

struct ContractionRate {
    double r = 0.0;
    bool positive = false;
};

// Exponential decay rate of the period-map contraction,
// r = (3^((p-2)/2) C_K - C_S sqrt(Lambda) (mu+2Lambda)^((2-p)/2))
//     / (2 (mu+2Lambda)^((2-p)/2)).
ContractionRate contraction_rate(double p, double lambda, double mu, double C_S, double C_K);

struct ExtinctionBounds {
    double statement = 0.0;              // t_f + C_S^(3-p) Lambda^(2-p) / (2-p)
    std::optional<double> proof;         // t_f + C_S ||v0||_2^(2-p) / (2-p)
};

ExtinctionBounds extinction_bound(double p, double C_S, double lambda, double t_f,
                                  std::optional<double> v0_l2 = std::nullopt);

struct ReverseHolderSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

// Both sides of the 0 < q < 1 Hoelder inequality
//   int |f g| >= (int |f|^q)^(1/q) (int |g|^q')^(1/q'),  q' = q/(q-1) < 0.
ReverseHolderSides reverse_holder_check(const GridField& f, const GridField& g, double q);

struct SmallnessBudget {
    double p = 5.0 / 3.0;
    double mu = 0.0;
    SobolevTable roles;
    double C_K = 0.0;
    double C_S = 0.0; // scalar entering the threshold formulas: max over
                      // roles after reducing each to 1-homogeneous form
    std::array<double, 3> branches{};
    int active_branch = 0;
    double lambda = 0.0;
    double K = 0.0;
    double A = 0.0; // C_S^((12p-11)/(3p-2))
    ContractionRate rate;
    double extinction_statement_duration = 0.0;
    // provenance
    std::uint64_t seed = 0;
    int grid_dim = 2;
    int grid_n = 0;
    int samples = 0;
};

SmallnessBudget compute_budget(const TorusGrid& grid, double p, double mu, std::uint64_t seed,
                               const EstimatorOptions& opts = {});

nlohmann::json budget_to_json(const SmallnessBudget& b);
SmallnessBudget budget_from_json(const nlohmann::json& j);

} // namespace pns
