#include "canard/canard.hpp"

#include "canard/error.hpp"

#include <cmath>
#include <string>

namespace canard {

const char* to_string(CanardStatus s) {
    switch (s) {
        case CanardStatus::reached_stop: return "reached_stop";
        case CanardStatus::hit_x_nullcline: return "hit_x_nullcline";
        case CanardStatus::time_exhausted: return "time_exhausted";
    }
    return "?";
}

const char* to_string(SegmentKind k) {
    return k == SegmentKind::fast_jump ? "fast_jump" : "slow_arc";
}

const char* to_string(FunnelMethod m) { return m == FunnelMethod::linear ? "linear" : "numeric"; }

const char* to_string(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::ok: return "ok";
        case OrbitStatus::trapped: return "trapped";
        case OrbitStatus::non_transversal: return "non_transversal";
    }
    return "?";
}

std::optional<double> CanardApprox::z_at(double x) const {
    // Samples run from x ~ -1 toward x_stop, x decreasing.
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double x0 = samples[i - 1][0];
        const double x1 = samples[i][0];
        if ((x <= x0 && x >= x1) || (x >= x0 && x <= x1)) {
            if (x0 == x1) {
                return samples[i][1];
            }
            const double w = (x - x0) / (x1 - x0);
            return samples[i - 1][1] + w * (samples[i][1] - samples[i - 1][1]);
        }
    }
    return std::nullopt;
}

namespace {

FoldedSingularity require_node(const DimensionlessParams& q, const char* who) {
    FoldedSingularity node = jacobian_folded(q, FoldSide::lower);
    if (node.classification != SingularityClass::stable_node) {
        throw DomainError(std::string(who) + ": lower folded singularity is " +
                          to_string(node.classification) + ", not a stable node");
    }
    return node;
}

struct TraceResult {
    Trajectory<2> path;
    CanardStatus status = CanardStatus::time_exhausted;
};

TraceResult trace_canard(const DimensionlessParams& q, const FoldedSingularity& node,
                         double offset, const CanardOptions& opts) {
    const double ms = *node.slope_strong;
    const double norm = std::hypot(1.0, ms);
    const Vec<2> seed{node.x - offset / norm, node.z - offset * ms / norm};
    auto reverse = [&q](double, const Vec<2>& u) {
        const Vec<2> d = desingularized_vf(q, u);
        return Vec<2>{-d[0], -d[1]};
    };
    std::vector<EventFunction<2>> events(2);
    events[0].g = [x_stop = opts.x_stop](double, const Vec<2>& u) { return u[0] - x_stop; };
    events[0].direction = Direction::falling;
    events[0].terminal = true;
    // Reverse-time xdot turning positive: the curve met the x-nullcline.
    events[1].g = [&reverse](double t, const Vec<2>& u) { return reverse(t, u)[0]; };
    events[1].direction = Direction::rising;
    events[1].terminal = true;

    auto res = integrate_with_events<2>(reverse, seed, 0.0, opts.t_max, opts.integrator, events);
    TraceResult out;
    out.path = std::move(res.trajectory);
    if (res.terminated) {
        out.status = res.events.back().index == 0 ? CanardStatus::reached_stop
                                                  : CanardStatus::hit_x_nullcline;
    }
    return out;
}

}  // namespace

CanardApprox strong_canard(const DimensionlessParams& q, const CanardOptions& opts) {
    const FoldedSingularity node = require_node(q, "strong_canard");
    if (!(opts.x_stop < -1.0)) {
        throw DomainError("strong_canard: x_stop must lie on M_A- (x < -1)");
    }
    CanardApprox out;
    out.seed_offset = opts.seed_offset > 0.0 ? opts.seed_offset : 1e-6 * (1.0 + std::abs(node.z));
    out.slope_strong = *node.slope_strong;
    out.z_minus = node.z;
    out.x_stop = opts.x_stop;

    const TraceResult main = trace_canard(q, node, out.seed_offset, opts);
    out.status = main.status;
    out.samples = main.path.states;
    if (out.status == CanardStatus::reached_stop) {
        out.z_at_stop = out.samples.back()[1];
    }

    const double x_probe = -1.0 - 100.0 * out.seed_offset;
    for (const auto& u : out.samples) {
        if (u[0] <= x_probe) {
            const Vec<2> d = desingularized_vf(q, u);
            out.tangent_slope_at_node = d[1] / d[0];
            break;
        }
    }

    const TraceResult fine = trace_canard(q, node, out.seed_offset / 10.0, opts);
    if (fine.status == CanardStatus::reached_stop && out.z_at_stop) {
        out.z_at_stop_refined = fine.path.states.back()[1];
        out.richardson_delta = std::abs(*out.z_at_stop_refined - *out.z_at_stop);
    }
    return out;
}

SingularOrbit build_singular_orbit(const DimensionlessParams& q, FunnelMethod method,
                                   const OrbitOptions& opts) {
    const FoldedSingularity node = require_node(q, "build_singular_orbit");
    SingularOrbit orbit;
    orbit.method = method;
    orbit.z_minus = node.z;
    orbit.z_star = node.z - *node.slope_strong;

    const double x_upper_landing = project_fold(FoldSide::lower, q.k);
    const double x_lower_landing = project_fold(FoldSide::upper, q.k);

    OrbitSegment jump_up{SegmentKind::fast_jump, {node.x, node.z}, {x_upper_landing, node.z}, {}};
    jump_up.samples = {jump_up.start, jump_up.end};
    orbit.segments.push_back(jump_up);

    auto field = [&q](double, const Vec<2>& u) { return desingularized_vf(q, u); };
    std::vector<EventFunction<2>> events(2);
    events[0].g = [](double, const Vec<2>& u) { return u[0] - 1.0; };
    events[0].direction = Direction::falling;
    events[0].terminal = true;
    events[1].g = [xe = opts.x_escape](double, const Vec<2>& u) { return u[0] - xe; };
    events[1].direction = Direction::rising;
    events[1].terminal = true;
    auto arc = integrate_with_events<2>(field, jump_up.end, 0.0, opts.t_max, opts.integrator,
                                        events);

    OrbitSegment slow{SegmentKind::slow_arc, jump_up.end, arc.trajectory.states.back(),
                      arc.trajectory.states};
    orbit.segments.push_back(slow);

    const bool reached_fold = arc.terminated && arc.events.back().index == 0;
    if (!reached_fold) {
        orbit.status = OrbitStatus::trapped;
        return orbit;
    }
    orbit.crossing_z = slow.end[1];
    orbit.crossing_xdot = desingularized_vf(q, {1.0, orbit.crossing_z})[0];
    orbit.transversal = orbit.crossing_xdot < -1e-9;
    if (!orbit.transversal) {
        orbit.status = OrbitStatus::non_transversal;
    }

    orbit.landing = {x_lower_landing, orbit.crossing_z};
    OrbitSegment jump_down{SegmentKind::fast_jump, {1.0, orbit.crossing_z}, orbit.landing, {}};
    jump_down.samples = {jump_down.start, jump_down.end};
    orbit.segments.push_back(jump_down);

    orbit.in_funnel_linear = orbit.crossing_z < orbit.z_star;

    CanardOptions copts = opts.canard;
    copts.x_stop = x_lower_landing;
    const CanardApprox canard = strong_canard(q, copts);
    if (canard.z_at_stop) {
        orbit.canard_z_at_landing = canard.z_at_stop;
        orbit.in_funnel_numeric = orbit.crossing_z < *canard.z_at_stop;
    }

    orbit.closed = orbit.status == OrbitStatus::ok && orbit.transversal &&
                   orbit.in_funnel_numeric &&
                   (method == FunnelMethod::numeric || orbit.in_funnel_linear);
    if (orbit.closed) {
        // Funnel trajectories reach the node only asymptotically; stop just short of L-.
        std::vector<EventFunction<2>> near_fold(1);
        near_fold[0].g = [](double, const Vec<2>& u) { return u[0] + 1.0 + 1e-6; };
        near_fold[0].direction = Direction::rising;
        near_fold[0].terminal = true;
        auto back = integrate_with_events<2>(field, orbit.landing, 0.0, opts.t_max,
                                             opts.integrator, near_fold);
        OrbitSegment slow_back{SegmentKind::slow_arc, orbit.landing, {node.x, node.z},
                               back.trajectory.states};
        slow_back.samples.push_back(slow_back.end);
        orbit.segments.push_back(slow_back);
    }
    return orbit;
}

}  // namespace canard
