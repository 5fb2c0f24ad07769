#include "canard/signature.hpp"

#include "canard/error.hpp"

#include <algorithm>
#include <optional>

namespace canard {

const char* to_string(OscillationKind k) { return k == OscillationKind::lao ? "LAO" : "SAO"; }

std::vector<Oscillation> extract_oscillations(std::span<const double> t,
                                              std::span<const double> x,
                                              double transient_fraction, double hysteresis) {
    if (t.size() != x.size()) {
        throw DomainError("extract_oscillations: t and x differ in length");
    }
    if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
        throw DomainError("extract_oscillations: transient_fraction must lie in [0, 1)");
    }
    std::vector<Oscillation> out;
    if (t.empty()) {
        return out;
    }
    const double t_cut = t.front() + transient_fraction * (t.back() - t.front());
    std::size_t i = 0;
    while (i < t.size() && t[i] < t_cut) {
        ++i;
    }
    if (i >= t.size()) {
        return out;
    }

    enum class Trend { unknown, rising, falling };
    Trend trend = Trend::unknown;
    double run_max = x[i], run_max_t = t[i];
    double run_min = x[i];
    double last_min = x[i];
    bool last_min_at_start = true;
    std::size_t extrema = 0;

    for (++i; i < t.size(); ++i) {
        const double xi = x[i];
        switch (trend) {
            case Trend::unknown:
                if (xi > run_max) { run_max = xi; run_max_t = t[i]; }
                if (xi < run_min) { run_min = xi; }
                if (xi > run_min + hysteresis) {
                    trend = Trend::rising;
                    last_min = run_min;
                    run_max = xi;
                    run_max_t = t[i];
                } else if (xi < run_max - hysteresis) {
                    trend = Trend::falling;
                    run_min = xi;
                }
                break;
            case Trend::rising:
                if (xi > run_max) {
                    run_max = xi;
                    run_max_t = t[i];
                } else if (xi < run_max - hysteresis) {
                    out.push_back({run_max_t, run_max, last_min, last_min_at_start});
                    ++extrema;
                    trend = Trend::falling;
                    run_min = xi;
                }
                break;
            case Trend::falling:
                if (xi < run_min) {
                    run_min = xi;
                } else if (xi > run_min + hysteresis) {
                    ++extrema;
                    last_min = run_min;
                    last_min_at_start = false;
                    trend = Trend::rising;
                    run_max = xi;
                    run_max_t = t[i];
                }
                break;
        }
    }
    if (extrema < 2) {
        out.clear();
    }
    return out;
}

std::vector<Oscillation> extract_oscillations(const Trajectory<3>& traj,
                                              double transient_fraction) {
    std::vector<double> x(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        x[i] = traj.states[i][0];
    }
    return extract_oscillations(traj.times, x, transient_fraction);
}

OscillationKind classify(const Oscillation& osc) {
    return (osc.x_max > 1.0 && osc.x_min_before < -1.0) ? OscillationKind::lao
                                                        : OscillationKind::sao;
}

std::string format_blocks(const std::vector<SignatureBlock>& blocks) {
    std::string s;
    for (const auto& b : blocks) {
        if (!s.empty()) {
            s += ' ';
        }
        s += std::to_string(b.large) + "^" + std::to_string(b.small);
    }
    return s;
}

namespace {

std::vector<SignatureBlock> to_blocks(std::span<const OscillationKind> seq) {
    std::vector<SignatureBlock> blocks;
    std::size_t i = 0;
    while (i < seq.size()) {
        SignatureBlock b;
        while (i < seq.size() && seq[i] == OscillationKind::lao) { ++b.large; ++i; }
        while (i < seq.size() && seq[i] == OscillationKind::sao) { ++b.small; ++i; }
        blocks.push_back(b);
    }
    return blocks;
}

std::optional<std::size_t> minimal_period(std::span<const OscillationKind> seq) {
    const std::size_t n = seq.size();
    for (std::size_t period = 1; 2 * period <= n; ++period) {
        if (seq[period] != OscillationKind::lao) {
            continue;  // a cycle must close right before an LAO
        }
        bool ok = true;
        for (std::size_t i = 0; i + period < n && ok; ++i) {
            ok = seq[i] == seq[i + period];
        }
        if (ok) {
            return period;
        }
    }
    return std::nullopt;
}

std::vector<SignatureBlock> smallest_rotation(const std::vector<SignatureBlock>& cycle) {
    std::vector<SignatureBlock> best = cycle;
    std::vector<SignatureBlock> rot = cycle;
    for (std::size_t r = 1; r < cycle.size(); ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) {
            best = rot;
        }
    }
    return best;
}

}  // namespace

MmoSignature signature_from_kinds(const std::vector<OscillationKind>& kinds) {
    MmoSignature sig;
    sig.kinds = kinds;
    const auto first_lao = std::find(kinds.begin(), kinds.end(), OscillationKind::lao);
    if (first_lao == kinds.end()) {
        sig.blocks = {SignatureBlock{0, static_cast<int>(kinds.size())}};
        sig.periodic = false;
        sig.canonical_string = format_blocks(sig.blocks);
        return sig;
    }
    const std::span<const OscillationKind> seq(&*first_lao,
                                               static_cast<std::size_t>(kinds.end() - first_lao));
    if (const auto period = minimal_period(seq)) {
        sig.blocks = smallest_rotation(to_blocks(seq.first(*period)));
        sig.periodic = true;
    } else {
        sig.blocks = to_blocks(seq);
        if (sig.blocks.size() > 1) {
            sig.blocks.pop_back();
        }
    }
    sig.canonical_string = format_blocks(sig.blocks);
    return sig;
}

MmoSignature signature(std::span<const double> t, std::span<const double> x,
                       double transient_fraction) {
    std::vector<Oscillation> osc = extract_oscillations(t, x, transient_fraction);
    std::vector<OscillationKind> kinds;
    kinds.reserve(osc.size());
    for (const auto& o : osc) {
        kinds.push_back(classify(o));
    }
    MmoSignature sig = signature_from_kinds(kinds);
    sig.oscillations = std::move(osc);
    return sig;
}

MmoSignature signature(const Trajectory<3>& traj, double transient_fraction) {
    std::vector<double> x(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        x[i] = traj.states[i][0];
    }
    return signature(traj.times, x, transient_fraction);
}

}  // namespace canard
