#include "pns/forcing.hpp"

#include <cmath>

#include "pns/norms.hpp"

namespace pns {

ForcingSpec ForcingSpec::make(const VectorField& profile, ModulationKind kind, double amplitude,
                              double p, double period, double t_f,
                              const SmallnessBudget* budget) {
    if (amplitude < 0.0) throw ArgumentError("ForcingSpec: amplitude must be >= 0");
    ForcingSpec f;
    f.kind_ = kind;
    f.period_ = period;
    f.t_f_ = t_f;
    f.amplitude_ = amplitude;
    if (kind != ModulationKind::constant && !(period > 0.0))
        throw ArgumentError("ForcingSpec: period must be positive");
    if (kind == ModulationKind::extinction && !(t_f > 0.0 && t_f < period))
        throw ArgumentError("ForcingSpec: extinction instant must lie in (0, period)");

    f.profile_ = profile;
    f.profile_.enforce_spectral_invariants(); // mean-zero force
    if (amplitude > 0.0) {
        double n = field_lp_norm(f.profile_, 4.0 / p);
        if (!(n > 0.0)) throw ArgumentError("ForcingSpec: zero profile with nonzero amplitude");
        for (auto& c : f.profile_.comp)
            for (auto& z : c) z /= n;
    }
    if (budget && f.amplitude_ > budget->K * (1.0 + 1e-12))
        throw ArgumentError("ForcingSpec: sup_t ||f(t)||_{4/p} exceeds the force bound K");
    return f;
}

ForcingSpec ForcingSpec::none(const TorusGrid& grid, double /*p*/) {
    ForcingSpec f;
    f.profile_ = VectorField::zero(grid);
    f.amplitude_ = 0.0;
    return f;
}

double ForcingSpec::modulation(double t) const {
    switch (kind_) {
        case ModulationKind::constant: return 1.0;
        case ModulationKind::periodic: {
            double s = std::fmod(t, period_);
            if (s < 0.0) s += period_;
            // smooth bump, zero at the period seam
            double u = std::sin(M_PI * s / period_);
            return u * u;
        }
        case ModulationKind::extinction: {
            double s = std::fmod(t, period_);
            if (s < 0.0) s += period_;
            if (s >= t_f_) return 0.0;
            double u = std::sin(M_PI * s / t_f_);
            return u * u;
        }
    }
    return 0.0;
}

VectorField ForcingSpec::at(double t) const {
    VectorField out = profile_;
    double a = amplitude_ * modulation(t);
    for (auto& c : out.comp)
        for (auto& z : c) z *= a;
    return out;
}

void ForcingSpec::add_at(double t, VectorField& dst) const {
    double a = amplitude_ * modulation(t);
    if (a == 0.0) return;
    axpy(dst, a, profile_);
}

} // namespace pns
