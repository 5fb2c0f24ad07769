#pragma once

// Adaptive Dormand-Prince 5(4) integration with dense output and directional
// event location. Header-only so vector fields inline into the stage loop.

#include "canard/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace canard {

template <std::size_t N>
using Vec = std::array<double, N>;

struct IntegratorConfig {
    double rtol = 1e-8;
    double atol = 1e-10;
    /// Per-component absolute tolerances; when non-empty they replace `atol`
    /// and must match the state dimension.
    std::vector<double> atol_components{};
    double h_init = 0.0;  ///< 0 selects an automatic first step
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 5'000'000;
    /// Fixed-step mode (step h_init, never rejected). Used for order checks.
    bool adaptive = true;

    void validate() const {
        if (!(rtol > 0.0) || !(atol > 0.0)) {
            throw DomainError("IntegratorConfig: rtol and atol must be > 0");
        }
        for (double a : atol_components) {
            if (!(a > 0.0)) {
                throw DomainError("IntegratorConfig: atol_components must be > 0");
            }
        }
        if (!(h_max > 0.0)) {
            throw DomainError("IntegratorConfig: h_max must be > 0");
        }
        if (max_steps == 0) {
            throw DomainError("IntegratorConfig: max_steps must be > 0");
        }
        if (h_init < 0.0 || (!adaptive && !(h_init > 0.0))) {
            throw DomainError("IntegratorConfig: fixed-step mode needs h_init > 0");
        }
    }
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

template <std::size_t N>
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec<N>> states;
    /// Vector field at each stored point; feeds the Hermite interpolant.
    std::vector<Vec<N>> derivatives;
    StepStats stats;
    /// max_steps was exhausted before the end of the span.
    bool truncated = false;

    [[nodiscard]] std::size_t size() const { return times.size(); }
    [[nodiscard]] bool empty() const { return times.empty(); }

    /// Cubic Hermite dense output; t must lie within [times.front(), times.back()].
    [[nodiscard]] Vec<N> at(double t) const {
        if (times.empty() || t < times.front() || t > times.back()) {
            throw DomainError("Trajectory::at: time outside the stored span");
        }
        auto it = std::upper_bound(times.begin(), times.end(), t);
        std::size_t i1 = static_cast<std::size_t>(it - times.begin());
        if (i1 >= times.size()) {
            return states.back();
        }
        const std::size_t i0 = i1 - 1;
        const double hstep = times[i1] - times[i0];
        const double s = (t - times[i0]) / hstep;
        const double s2 = s * s;
        const double s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1;
        const double h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2;
        const double h11 = s3 - s2;
        Vec<N> out{};
        for (std::size_t j = 0; j < N; ++j) {
            out[j] = h00 * states[i0][j] + h10 * hstep * derivatives[i0][j] +
                     h01 * states[i1][j] + h11 * hstep * derivatives[i1][j];
        }
        return out;
    }
};

/// Samples the dense output on a uniform grid t0, t0+dt, ... <= end.
template <std::size_t N>
std::vector<std::pair<double, Vec<N>>> sample_uniform(const Trajectory<N>& traj, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("sample_uniform: dt must be > 0");
    }
    std::vector<std::pair<double, Vec<N>>> out;
    if (traj.empty()) {
        return out;
    }
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / dt + 1e-9));
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = std::min(t0 + static_cast<double>(i) * dt, t1);
        out.emplace_back(t, traj.at(t));
    }
    return out;
}

enum class Direction { rising, falling, both };

/// Threshold crossing of one state component.
struct EventSpec {
    std::size_t component = 0;
    double threshold = 0.0;
    Direction direction = Direction::both;
    bool terminal = false;
};

/// General event: fires where g(t, y) changes sign in the requested direction.
template <std::size_t N>
struct EventFunction {
    std::function<double(double, const Vec<N>&)> g;
    Direction direction = Direction::both;
    bool terminal = false;

    static EventFunction from_spec(const EventSpec& spec) {
        if (spec.component >= N) {
            throw DomainError("EventSpec: component out of range");
        }
        if (!std::isfinite(spec.threshold)) {
            throw DomainError("EventSpec: threshold must be finite");
        }
        EventFunction ev;
        ev.g = [c = spec.component, thr = spec.threshold](double, const Vec<N>& y) {
            return y[c] - thr;
        };
        ev.direction = spec.direction;
        ev.terminal = spec.terminal;
        return ev;
    }
};

template <std::size_t N>
struct EventRecord {
    std::size_t index = 0;  ///< position in the event list passed in
    double t = 0.0;
    Vec<N> state{};
    bool rising = false;
};

template <std::size_t N>
struct EventResult {
    Trajectory<N> trajectory;
    std::vector<EventRecord<N>> events;
    /// A terminal event ended the integration.
    bool terminated = false;
};

inline constexpr double kEventTolerance = 1e-10;

namespace detail {

struct DormandPrince {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <std::size_t N>
bool all_finite(const Vec<N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <std::size_t N>
std::string describe(double t, const Vec<N>& y) {
    std::ostringstream os;
    os.precision(17);
    os << "t=" << t << " state=(";
    for (std::size_t j = 0; j < N; ++j) {
        os << (j ? ", " : "") << y[j];
    }
    os << ")";
    return os.str();
}

/// One DP5(4) step of size hstep from (t, y) with k1 = f(t, y).
/// Writes the 5th-order solution, its derivative (FSAL) and the error estimate.
template <std::size_t N, typename Field>
void dp_step(const Field& field, double t, const Vec<N>& y, const Vec<N>& k1, double hstep,
             Vec<N>& y_new, Vec<N>& k7, Vec<N>& err) {
    using C = DormandPrince;
    Vec<N> tmp{};
    auto stage = [&](auto&& combine) {
        for (std::size_t j = 0; j < N; ++j) {
            tmp[j] = y[j] + hstep * combine(j);
        }
    };
    stage([&](std::size_t j) { return C::a21 * k1[j]; });
    const Vec<N> k2 = field(t + C::c2 * hstep, tmp);
    stage([&](std::size_t j) { return C::a31 * k1[j] + C::a32 * k2[j]; });
    const Vec<N> k3 = field(t + C::c3 * hstep, tmp);
    stage([&](std::size_t j) { return C::a41 * k1[j] + C::a42 * k2[j] + C::a43 * k3[j]; });
    const Vec<N> k4 = field(t + C::c4 * hstep, tmp);
    stage([&](std::size_t j) {
        return C::a51 * k1[j] + C::a52 * k2[j] + C::a53 * k3[j] + C::a54 * k4[j];
    });
    const Vec<N> k5 = field(t + C::c5 * hstep, tmp);
    stage([&](std::size_t j) {
        return C::a61 * k1[j] + C::a62 * k2[j] + C::a63 * k3[j] + C::a64 * k4[j] +
               C::a65 * k5[j];
    });
    const Vec<N> k6 = field(t + hstep, tmp);
    for (std::size_t j = 0; j < N; ++j) {
        y_new[j] = y[j] + hstep * (C::b1 * k1[j] + C::b3 * k3[j] + C::b4 * k4[j] +
                                   C::b5 * k5[j] + C::b6 * k6[j]);
    }
    k7 = field(t + hstep, y_new);
    for (std::size_t j = 0; j < N; ++j) {
        err[j] = hstep * (C::e1 * k1[j] + C::e3 * k3[j] + C::e4 * k4[j] + C::e5 * k5[j] +
                          C::e6 * k6[j] + C::e7 * k7[j]);
    }
}

inline double abs_tol(const IntegratorConfig& cfg, std::size_t j) {
    return cfg.atol_components.empty() ? cfg.atol : cfg.atol_components[j];
}

template <std::size_t N>
double error_norm(const Vec<N>& err, const Vec<N>& y0, const Vec<N>& y1,
                  const IntegratorConfig& cfg) {
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double sc = abs_tol(cfg, j) + cfg.rtol * std::max(std::abs(y0[j]), std::abs(y1[j]));
        const double e = err[j] / sc;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(N));
}

template <std::size_t N>
double rms_scaled(const Vec<N>& v, const Vec<N>& y, const IntegratorConfig& cfg) {
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double e = v[j] / (abs_tol(cfg, j) + cfg.rtol * std::abs(y[j]));
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(N));
}

template <std::size_t N, typename Field>
double initial_step(const Field& field, double t0, const Vec<N>& y0, const Vec<N>& f0,
                    double span, const IntegratorConfig& cfg) {
    const double d0 = rms_scaled(y0, y0, cfg);
    const double d1 = rms_scaled(f0, y0, cfg);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min({h0, span, cfg.h_max});
    Vec<N> y1{};
    for (std::size_t j = 0; j < N; ++j) {
        y1[j] = y0[j] + h0 * f0[j];
    }
    const Vec<N> f1 = field(t0 + h0, y1);
    Vec<N> df{};
    for (std::size_t j = 0; j < N; ++j) {
        df[j] = f1[j] - f0[j];
    }
    const double d2 = all_finite(f1) ? rms_scaled(df, y0, cfg) / h0
                                     : std::numeric_limits<double>::infinity();
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, span, cfg.h_max});
}

template <std::size_t N, typename Field, typename OnStep>
Trajectory<N> drive(const Field& field, const Vec<N>& y0, double t0, double t1,
                    const IntegratorConfig& cfg, OnStep&& on_step) {
    cfg.validate();
    if (!cfg.atol_components.empty() && cfg.atol_components.size() != N) {
        throw DomainError("IntegratorConfig: atol_components size must match the state");
    }
    if (!(t1 > t0)) {
        throw DomainError("integrate: t_span must satisfy t1 > t0");
    }
    if (!all_finite(y0)) {
        throw DomainError("integrate: non-finite initial state");
    }
    Trajectory<N> traj;
    auto counted = [&](double t, const Vec<N>& y) {
        ++traj.stats.evaluations;
        return field(t, y);
    };
    Vec<N> f0 = counted(t0, y0);
    if (!all_finite(f0)) {
        throw NumericError("non-finite derivative at " + describe(t0, y0));
    }
    traj.times.push_back(t0);
    traj.states.push_back(y0);
    traj.derivatives.push_back(f0);

    double t = t0;
    Vec<N> y = y0;
    double hstep = cfg.adaptive
                       ? (cfg.h_init > 0.0 ? std::min(cfg.h_init, cfg.h_max)
                                           : initial_step(counted, t0, y0, f0, t1 - t0, cfg))
                       : cfg.h_init;
    bool last_rejected = false;
    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;

    while (t < t1) {
        if (traj.stats.accepted >= cfg.max_steps) {
            traj.truncated = true;
            break;
        }
        const double remaining = t1 - t;
        double step = std::min(hstep, remaining);
        // Avoid a sliver final step.
        if (remaining - step < 1e-12 * std::max(1.0, std::abs(t1))) {
            step = remaining;
        }
        if (cfg.adaptive && step < 1e-14 * std::max(1.0, std::abs(t))) {
            throw NumericError("step size underflow at " + describe(t, y));
        }
        Vec<N> y_new{}, f_new{}, err{};
        dp_step<N>(counted, t, y, f0, step, y_new, f_new, err);
        const bool finite = all_finite(y_new) && all_finite(f_new);

        double e = 0.0;
        if (cfg.adaptive) {
            e = finite ? error_norm(err, y, y_new, cfg) : std::numeric_limits<double>::infinity();
            if (!(e <= 1.0)) {
                ++traj.stats.rejected;
                const double fac =
                    std::isfinite(e) ? std::max(fac_min, safety * std::pow(e, -0.2)) : 0.1;
                hstep = step * std::min(1.0, fac);
                last_rejected = true;
                continue;
            }
        } else if (!finite) {
            throw NumericError("non-finite state in fixed-step mode at " + describe(t, y));
        }

        const double t_new = (step == remaining) ? t1 : t + step;
        ++traj.stats.accepted;
        const bool stop = on_step(t, y, f0, t_new, y_new, f_new, traj);
        if (stop) {
            return traj;
        }
        traj.times.push_back(t_new);
        traj.states.push_back(y_new);
        traj.derivatives.push_back(f_new);
        t = t_new;
        y = y_new;
        f0 = f_new;

        if (cfg.adaptive) {
            double fac = e == 0.0 ? fac_max : safety * std::pow(e, -0.2);
            fac = std::clamp(fac, fac_min, last_rejected ? 1.0 : fac_max);
            hstep = std::min(step * fac, cfg.h_max);
            last_rejected = false;
        }
    }
    return traj;
}

}  // namespace detail

/// Integrates y' = field(t, y) over [t0, t1].
///
/// The field is any callable Vec<N>(double, const Vec<N>&). Local error per
/// step is held below rtol*|y| + atol (RMS over components). Exhausting
/// max_steps returns the partial trajectory with `truncated` set. A non-finite
/// derivative at an accepted point throws NumericError with its location.
template <std::size_t N, typename Field>
Trajectory<N> integrate(const Field& field, const Vec<N>& y0, double t0, double t1,
                        const IntegratorConfig& cfg) {
    return detail::drive<N>(field, y0, t0, t1, cfg,
                            [](double, const Vec<N>&, const Vec<N>&, double, const Vec<N>&,
                               const Vec<N>&, Trajectory<N>&) { return false; });
}

/// As integrate(), additionally locating sign changes of each event function.
///
/// Crossings are bracketed on accepted steps and bisected with exact sub-steps
/// of the RK pair until |g| < 1e-10. A terminal event ends the trajectory at the
/// located state.
template <std::size_t N, typename Field>
EventResult<N> integrate_with_events(const Field& field, const Vec<N>& y0, double t0, double t1,
                                     const IntegratorConfig& cfg,
                                     const std::vector<EventFunction<N>>& events) {
    EventResult<N> result;
    std::vector<double> g_prev(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!events[i].g) {
            throw DomainError("integrate_with_events: empty event function");
        }
        g_prev[i] = events[i].g(t0, y0);
    }

    auto on_step = [&](double t, const Vec<N>& y, const Vec<N>& f, double t_new,
                       const Vec<N>& y_new, const Vec<N>& f_new, Trajectory<N>& traj) {
        struct Hit {
            std::size_t index;
            double t;
            Vec<N> state;
            bool rising;
        };
        std::vector<Hit> hits;
        std::vector<double> g_new(events.size());
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto& ev = events[i];
            g_new[i] = ev.g(t_new, y_new);
            const double ga = g_prev[i];
            const double gb = g_new[i];
            const bool rising = ga < 0.0 && gb >= 0.0;
            const bool falling = ga > 0.0 && gb <= 0.0;
            const bool wanted = (rising && ev.direction != Direction::falling) ||
                                (falling && ev.direction != Direction::rising);
            if (!wanted) {
                continue;
            }
            double lo = t, hi = t_new;
            double g_lo = ga;
            Vec<N> at_hi = y_new;
            double t_hit = t_new;
            if (std::abs(gb) >= kEventTolerance) {
                Vec<N> ys{}, fs{}, es{};
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    detail::dp_step<N>(field, t, y, f, mid - t, ys, fs, es);
                    const double gm = ev.g(mid, ys);
                    t_hit = mid;
                    at_hi = ys;
                    if (std::abs(gm) < kEventTolerance || hi - lo < 1e-15 * std::max(1.0, std::abs(t))) {
                        break;
                    }
                    if ((gm < 0.0) == (g_lo < 0.0) && gm != 0.0) {
                        lo = mid;
                        g_lo = gm;
                    } else {
                        hi = mid;
                    }
                }
            }
            hits.push_back({i, t_hit, at_hi, rising});
        }
        g_prev = g_new;
        if (hits.empty()) {
            return false;
        }
        std::sort(hits.begin(), hits.end(),
                  [](const Hit& a, const Hit& b) { return a.t < b.t; });
        for (const Hit& hit : hits) {
            result.events.push_back({hit.index, hit.t, hit.state, hit.rising});
            if (events[hit.index].terminal) {
                result.terminated = true;
                if (hit.t > traj.times.back()) {
                    traj.times.push_back(hit.t);
                    traj.states.push_back(hit.state);
                    traj.derivatives.push_back(field(hit.t, hit.state));
                }
                return true;
            }
        }
        (void)f_new;
        return false;
    };
    result.trajectory = detail::drive<N>(field, y0, t0, t1, cfg, on_step);
    return result;
}

template <std::size_t N, typename Field>
EventResult<N> integrate_with_events(const Field& field, const Vec<N>& y0, double t0, double t1,
                                     const IntegratorConfig& cfg,
                                     const std::vector<EventSpec>& specs) {
    std::vector<EventFunction<N>> events;
    events.reserve(specs.size());
    for (const auto& s : specs) {
        events.push_back(EventFunction<N>::from_spec(s));
    }
    return integrate_with_events<N>(field, y0, t0, t1, cfg, events);
}

}  // namespace canard
