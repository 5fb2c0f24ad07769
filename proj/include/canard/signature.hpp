#pragma once

#include "canard/integrator.hpp"

#include <span>
#include <string>
#include <vector>

namespace canard {

/// One local maximum of x with the local minimum that preceded it.
struct Oscillation {
    double t_peak = 0.0;
    double x_max = 0.0;
    double x_min_before = 0.0;
    /// The preceding minimum is the start of the analysed window, not an
    /// interior turning point.
    bool min_at_window_start = false;
};

enum class OscillationKind { lao, sao };
const char* to_string(OscillationKind k);

inline constexpr double kExtremumHysteresis = 1e-4;

/// Local maxima of x(t) after discarding the leading transient_fraction of the
/// time span. Turning points are confirmed once x retreats by more than the
/// hysteresis band. Returns an empty list when fewer than two extrema exist.
std::vector<Oscillation> extract_oscillations(std::span<const double> t,
                                              std::span<const double> x,
                                              double transient_fraction,
                                              double hysteresis = kExtremumHysteresis);

/// Uses the first state component as x.
std::vector<Oscillation> extract_oscillations(const Trajectory<3>& traj,
                                              double transient_fraction);

/// LAO iff the excursion visits both attracting branches: x_max > 1 and the
/// preceding minimum < -1.
OscillationKind classify(const Oscillation& osc);

struct SignatureBlock {
    int large = 0;  ///< L
    int small = 0;  ///< s

    friend bool operator==(const SignatureBlock&, const SignatureBlock&) = default;
    friend auto operator<=>(const SignatureBlock&, const SignatureBlock&) = default;
};

struct MmoSignature {
    std::vector<SignatureBlock> blocks;
    /// The LAO/SAO sequence repeats its minimal cycle at least twice.
    bool periodic = false;
    std::string canonical_string;
    std::vector<Oscillation> oscillations;
    std::vector<OscillationKind> kinds;
};

/// "L1^s1 L2^s2 ..." for the given blocks.
std::string format_blocks(const std::vector<SignatureBlock>& blocks);

/// Compresses a LAO/SAO sequence into blocks L^s.
///
/// Leading SAOs before the first LAO are dropped. If the remaining symbol
/// sequence repeats a minimal cycle at least twice, `blocks` holds that cycle,
/// rotated to the lexicographically smallest block order, and `periodic` is
/// set. Otherwise `blocks` holds every complete block (the trailing block is
/// dropped when more than one exists, since its SAO count may be cut off).
/// With no LAO at all the result is "0^s" with s the SAO count and
/// periodic = false.
MmoSignature signature_from_kinds(const std::vector<OscillationKind>& kinds);

MmoSignature signature(std::span<const double> t, std::span<const double> x,
                       double transient_fraction = 0.5);
MmoSignature signature(const Trajectory<3>& traj, double transient_fraction = 0.5);

}  // namespace canard
