#pragma once

#include <optional>
#include <vector>

#include "pns/budget.hpp"
#include "pns/forcing.hpp"
#include "pns/rheology.hpp"

namespace pns {

struct TimeStepPolicy {
    double dt_init = 1e-3;
    double cfl_safety = 0.5;
    double max_dt = 1e-2;
};

struct SimConfig {
    TorusGrid grid{2, 64};
    RheologyParams rheo;
    TimeStepPolicy dt;
    double t_end = 1.0;
    int sample_stride = 8;
    std::optional<SmallnessBudget> budget;
    bool monitor_smallness = false;
    // stop early once ||v||_2 falls below this (0 disables); extinction runs
    double stop_below_l2 = 0.0;

    void validate() const;
    double effective_dt() const { return std::min(dt.dt_init, dt.max_dt); }
};

struct TrajectorySample {
    double t = 0.0;
    double l2 = 0.0;
    double grad_l2_sq = 0.0;
    double dv_p_p = 0.0;
    double dissipation = 0.0;
    double f_dot_v = 0.0;
    double f_norm_4p = 0.0;
    // monitor internals
    double grad_D_q_sq = 0.0;      // ||grad Dv||_{4/(4-p)}^2
    double stress_potential = 0.0; // (1/p)||(mu+|Dv|^2)^(1/2)||_p^p
    double vt_l2 = 0.0;
    double adv_dot_vt = 0.0;
    double f_dot_vt = 0.0;
    // filled by the monitors
    double energy_residual = 0.0;
    double grad_ineq_slack = 0.0;
    double vt_residual = 0.0;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> rows;
    double sample_dt = 0.0; // spacing between rows

    void write_csv(const std::string& path) const;
};

enum class SimStatus { ok, diverged };

struct SimResult {
    SimStatus status = SimStatus::ok;
    double diverged_time = 0.0;
    VectorField final_state;
    TrajectoryRecord record;
    double sup_grad_sq = 0.0;       // sup over steps of ||grad v||_2^2
    bool smallness_violated = false;
    bool cfl_flagged = false;
    double stopped_at = -1.0;       // >= 0 when the stop_below_l2 trigger fired
};

// Right-hand side of the truncated system: P(-v.grad v + div S_mu(Dv) + f).
// Advection and stress are evaluated on the 2x padded grid and truncated.
VectorField assemble_rhs(const VectorField& v, const VectorField& f_t,
                         const RheologyParams& params);

// Integrator for the truncated system. The linear part nu0*Laplacian with
// 2*nu0 = mu^((p-2)/2) (the pointwise bound on the effective viscosity) is
// handled exactly by an integrating factor; the remainder, advection and
// force advance with a two-stage second-order explicit rule.
class Stepper {
  public:
    Stepper(const TorusGrid& grid, const RheologyParams& params);

    double nu0() const { return nu0_; }
    VectorField rhs(const VectorField& v, double t, const ForcingSpec* forcing) const;
    VectorField step(const VectorField& v, double t, double dt, const ForcingSpec* forcing) const;
    // backward-Euler treatment of the linear part; fixed points solve
    // rhs = 0 exactly, so this is the pseudo-time polisher
    VectorField step_imex_euler(const VectorField& v, double t, double dt,
                                const ForcingSpec* forcing) const;

    // remainder stress div(S_mu(Dv) - 2 nu0 Dv) as a field, for tests
    VectorField stress_remainder(const VectorField& v) const;

  private:
    TorusGrid grid_;
    RheologyParams params_;
    double nu0_ = 0.0;
    mutable double cached_dt_ = -1.0;
    mutable std::vector<double> decay_;
    const std::vector<double>& decay_factors(double dt) const;
};

SimResult simulate(const VectorField& v0, const ForcingSpec* forcing, const SimConfig& config);

} // namespace pns
