#pragma once

#include <optional>

#include "pns/budget.hpp"
#include "pns/field.hpp"

namespace pns {

enum class ModulationKind { constant, periodic, extinction };

// Body force f(t,x) = amplitude * modulation(t) * profile(x) with the
// spatial profile normalized to unit L^{4/p} norm, so the peak force norm
// equals `amplitude`. The periodic modulations satisfy m(t + T) = m(t)
// exactly; the extinction variant vanishes identically on [t_f, T].
class ForcingSpec {
  public:
    static ForcingSpec make(const VectorField& profile, ModulationKind kind, double amplitude,
                            double p, double period = 1.0, double t_f = 0.0,
                            const SmallnessBudget* budget = nullptr);

    static ForcingSpec none(const TorusGrid& grid, double p);

    double modulation(double t) const;
    VectorField at(double t) const;
    void add_at(double t, VectorField& dst) const; // dst += f(t)

    double norm_4p(double t) const { return amplitude_ * modulation(t); }
    double sup_norm_4p() const { return amplitude_; }
    bool is_zero() const { return amplitude_ == 0.0; }
    bool vanishes_on_tail() const { return kind_ == ModulationKind::extinction; }

    ModulationKind kind() const { return kind_; }
    double period() const { return period_; }
    double t_f() const { return t_f_; }
    double amplitude() const { return amplitude_; }
    const VectorField& unit_profile() const { return profile_; }

  private:
    ForcingSpec() = default;
    VectorField profile_; // unit L^{4/p} norm, mean-zero
    ModulationKind kind_ = ModulationKind::constant;
    double period_ = 1.0;
    double t_f_ = 0.0;
    double amplitude_ = 0.0;
};

} // namespace pns
