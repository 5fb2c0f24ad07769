#pragma once

#include "canard/integrator.hpp"
#include "canard/model.hpp"

namespace canard {

inline Vec<3> to_vec(const State3& s) { return {s.x, s.y, s.z}; }
inline State3 to_state(const Vec<3>& v) { return {v[0], v[1], v[2]}; }

/// The dimensionless fast/slow system as an integrator field.
struct FullField {
    DimensionlessParams params;

    Vec<3> operator()(double, const Vec<3>& u) const {
        return to_vec(vf_full(params, to_state(u)));
    }
};

/// Dimensional cubic model as an integrator field over (S, A, H).
struct CubicField {
    PhysicalParams params;

    Vec<3> operator()(double, const Vec<3>& u) const {
        const PhysicalState d = vf_dimensional_cubic(params, {u[0], u[1], u[2]});
        return {d.S, d.A, d.H};
    }
};

/// Slow-time horizon and transient cut used for attractor studies.
inline constexpr double kDefaultHorizon = 200.0;
inline constexpr double kDefaultTransientFraction = 0.5;

/// Integrates the dimensionless system from `initial` over [0, t_end].
inline Trajectory<3> simulate(const DimensionlessParams& q, const State3& initial, double t_end,
                              const IntegratorConfig& cfg) {
    q.validate();
    return integrate<3>(FullField{q}, to_vec(initial), 0.0, t_end, cfg);
}

}  // namespace canard
