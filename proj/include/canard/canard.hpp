#pragma once

#include "canard/gsp.hpp"
#include "canard/integrator.hpp"
#include "canard/model.hpp"

#include <optional>
#include <vector>

namespace canard {

enum class CanardStatus {
    reached_stop,      ///< got to x_stop
    hit_x_nullcline,   ///< turned back toward L- before x_stop
    time_exhausted,
};
const char* to_string(CanardStatus s);

struct CanardOptions {
    /// Distance from the node along the strong eigenvector; <= 0 selects
    /// 1e-6 * (1 + |z_-|).
    double seed_offset = 0.0;
    double x_stop = -2.0;
    /// Horizon in desingularized time.
    double t_max = 1e3;
    IntegratorConfig integrator{.rtol = 1e-11, .atol = 1e-13};
};

/// Numerical strong canard gamma_s on M_A-, traced away from the folded node.
struct CanardApprox {
    /// (x, z) samples ordered from the seed outward.
    std::vector<Vec<2>> samples;
    double seed_offset = 0.0;
    /// Local slope dz/dx of the traced curve where it has moved 100 seed
    /// offsets from the node; tends to m_s as the offset shrinks.
    double tangent_slope_at_node = 0.0;
    double slope_strong = 0.0;  ///< m_s
    double z_minus = 0.0;
    double x_stop = -2.0;
    CanardStatus status = CanardStatus::time_exhausted;
    /// gamma_s(x_stop) when reached.
    std::optional<double> z_at_stop;
    /// Same curve seeded at seed_offset / 10, and |difference| at x_stop.
    std::optional<double> z_at_stop_refined;
    std::optional<double> richardson_delta;

    /// Linear interpolation z(x) on the samples; empty outside their x-range.
    [[nodiscard]] std::optional<double> z_at(double x) const;
};

/// Integrates the desingularized flow in reverse time from the lower folded
/// node, seeded along its strong eigenvector into x < -1, until x = x_stop.
/// Throws DomainError unless the lower folded singularity is a stable node.
CanardApprox strong_canard(const DimensionlessParams& q, const CanardOptions& opts = {});

enum class SegmentKind { fast_jump, slow_arc };
const char* to_string(SegmentKind k);

struct OrbitSegment {
    SegmentKind kind = SegmentKind::fast_jump;
    Vec<2> start{};
    Vec<2> end{};
    std::vector<Vec<2>> samples;
};

enum class FunnelMethod { linear, numeric };
const char* to_string(FunnelMethod m);

enum class OrbitStatus {
    ok,
    trapped,          ///< slow arc never reached L+
    non_transversal,  ///< arc meets L+ at the upper folded singularity
};
const char* to_string(OrbitStatus s);

struct SingularOrbit {
    std::vector<OrbitSegment> segments;
    FunnelMethod method = FunnelMethod::numeric;
    OrbitStatus status = OrbitStatus::ok;
    double z_minus = 0.0;
    double crossing_z = 0.0;
    /// Desingularized xdot at the crossing; equals crossing_z - z_+.
    double crossing_xdot = 0.0;
    bool transversal = false;
    Vec<2> landing{};
    double z_star = 0.0;
    std::optional<double> canard_z_at_landing;
    bool in_funnel_linear = false;
    bool in_funnel_numeric = false;
    bool closed = false;
};

struct OrbitOptions {
    double t_max = 1e3;
    /// Escape bound for the slow arc on M_A+.
    double x_escape = 10.0;
    IntegratorConfig integrator{.rtol = 1e-11, .atol = 1e-13};
    CanardOptions canard;
};

/// Singular orbit from the lower folded node: fast jump to P(L-), slow arc on
/// M_A+ to L+, fast jump to P(L+), then funnel membership of the landing point.
///
/// The numeric funnel edge (the traced strong canard) is always computed.
/// `closed` requires transversality and landing below it; the linear method
/// additionally requires landing below z*. Throws DomainError unless the
/// lower folded singularity is a stable node.
SingularOrbit build_singular_orbit(const DimensionlessParams& q, FunnelMethod method,
                                   const OrbitOptions& opts = {});

}  // namespace canard
