#pragma once

// Grid search over (a, p, m) at fixed delta.

#include "canard/gsp.hpp"
#include "canard/model.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace canard {

struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    /// Number of points; 1 samples `min` only.
    int count = 1;

    [[nodiscard]] double at(int i) const;
};

enum class SweepEmit { region, full };

struct SweepSpec {
    AxisRange a{-1.0, 1.0, 50};
    AxisRange p{0.12, 6.0, 50};
    AxisRange m{0.6, 0.6, 1};
    double delta = 1.3;
    double r = 0.3;
    double k = 4.0;
    double lambda = 1.0;
    ConditionMode mode = ConditionMode::strict;
    /// Verdict over (a)-(d), (g), (h) only.
    bool subset = false;
    /// region: only verdict-true rows are written; full: every grid point.
    SweepEmit emit = SweepEmit::full;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

struct RegionRow {
    double a = 0.0;
    double p = 0.0;
    double m = 0.0;
    double delta = 0.0;
    double b = 0.0;
    double k = 4.0;
    double lambda = 1.0;
    double r = 0.0;
    /// Pass flags of the headline conditions (a)-(i) for the sweep mode.
    std::array<bool, 9> cond{};
    double r_max = 0.0;
    bool verdict = false;

    /// Dimensionless parameters of this grid point (epsilon = 0.01).
    [[nodiscard]] DimensionlessParams params() const;
};

/// b such that delta(k, p, a, b, m) equals the requested delta.
double b_for_delta(double a, double p, double m, double k, double delta_value);

/// Evaluates every grid point; rows are ordered a outer, p middle, m inner.
/// Throws UsageError on an empty or invalid grid.
std::vector<RegionRow> run_sweep(const SweepSpec& spec);

/// Header "a,p,m,delta,cond_a,...,cond_i,r_max,verdict"; booleans as 1/0.
/// With emit == region only verdict-true rows are written.
void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows,
                      SweepEmit emit = SweepEmit::full);

}  // namespace canard
