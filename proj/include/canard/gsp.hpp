#pragma once

// Singular-limit geometry of the dimensionless system: critical manifold
// branches, reduced and desingularized flows, folded singularities and the
// parameter conditions for a folded node with a global return.

#include "canard/cubic.hpp"
#include "canard/integrator.hpp"
#include "canard/model.hpp"

#include <array>
#include <optional>
#include <vector>

namespace canard {

/// Branch of the S-shaped critical manifold y = h(x).
enum class Branch {
    attracting_lower,  ///< M_A-, x < -1
    fold_lower,        ///< L-,   x = -1
    repelling,         ///< M_R,  -1 < x < 1
    fold_upper,        ///< L+,   x = +1
    attracting_upper,  ///< M_A+, x > 1
};

Branch branch_of(double x);
const char* to_string(Branch b);

/// Reduced problem on the critical manifold: h'(x) xdot = rhs, zdot as given.
struct ReducedFlow {
    double h_prime = 0.0;
    double rhs = 0.0;
    double zdot = 0.0;
    /// rhs / h'(x); empty on the fold lines where the reduced flow is singular.
    std::optional<double> xdot;
};

ReducedFlow reduced_vf(const DimensionlessParams& q, double x, double z);

/// Desingularized reduced flow (time rescaled by h'(x)), state (x, z).
/// Orientation is reversed on M_R where h'(x) < 0.
Vec<2> desingularized_vf(const DimensionlessParams& q, const Vec<2>& xz);

/// delta = f(-1) - m h(-1) = p(a+1)^2 - b - m(k+2).
double delta(const DimensionlessParams& q);

/// z where the z-nullcline z = h(x) + lambda meets the lower fold; z_n = z_- + delta.
double z_nullcline_lower(const DimensionlessParams& q);

/// z of the folded singularity on L-: (m+1)h(-1) + lambda - f(-1).
double z_minus(const DimensionlessParams& q);

/// z of the folded singularity on L+: (m+1)h(1) + lambda - f(1).
double z_plus(const DimensionlessParams& q);

enum class FoldSide { lower, upper };
const char* to_string(FoldSide s);

enum class SingularityClass { stable_node, stable_focus, unstable, saddle, degenerate };
const char* to_string(SingularityClass c);

struct Jacobian2 {
    std::array<std::array<double, 2>, 2> entries{};
    double trace = 0.0;
    double det = 0.0;
    /// trace^2 - 4 det
    double discriminant = 0.0;
};

/// Linearization of the desingularized flow at an arbitrary point (x0, z0).
Jacobian2 desingularized_jacobian(const DimensionlessParams& q, double x0, double z0);

/// SAO count predicted from the eigenvalue ratio.
struct SignaturePrediction {
    /// Greatest integer strictly less than (1+mu)/(2mu).
    int count = 0;
    /// floor((1+mu)/(2mu)); differs from count only on the boundary.
    int floor_count = 0;
    /// (1+mu)/(2mu) is an integer to within 1e-9 (relative).
    bool on_boundary = false;
};

/// Throws DomainError unless 0 < mu < 1.
SignaturePrediction predicted_signature(double mu_ratio);

struct FoldedSingularity {
    FoldSide side = FoldSide::lower;
    double x = -1.0;
    double z = 0.0;
    Jacobian2 jacobian;
    SingularityClass classification = SingularityClass::degenerate;
    /// Real eigenvalues, |strong| >= |weak|; empty for complex pairs.
    std::optional<double> eigen_strong;
    std::optional<double> eigen_weak;
    /// Eigenvector slopes dz/dx; empty for complex pairs.
    std::optional<double> slope_strong;
    std::optional<double> slope_weak;
    /// mu = eigen_weak / eigen_strong and the predicted SAO count, stable nodes only.
    std::optional<double> mu_ratio;
    std::optional<SignaturePrediction> s_predicted;
};

/// Folded singularity on the requested fold with full eigendata.
FoldedSingularity jacobian_folded(const DimensionlessParams& q, FoldSide side);

/// Both folded singularities, lower first.
std::vector<FoldedSingularity> find_folded_singularities(const DimensionlessParams& q);

/// Coefficients (c3, c2, c1, c0) of m h(x) - f(x), written through delta:
/// m x^3 - p x^2 + (2ap - 3m) x + (p + 2ap - 2m - delta).
std::array<double, 4> nullcline_cubic(double a, double p, double m, double delta_value);

enum class RootVerdict { one_real_root, three_real_roots, boundary };
const char* to_string(RootVerdict v);

struct DiscriminantReport {
    double value = 0.0;
    RootVerdict verdict = RootVerdict::boundary;
    /// Distinct real roots of m h - f from the closed-form solver.
    std::size_t root_count = 0;
};

inline constexpr double kDiscriminantBand = 1e-8;

/// Cubic discriminant of m h - f as a function of (a, p, m, delta).
/// Throws DomainError when m == 0.
double discriminant_delta(double a, double p, double m, double delta_value);

/// discriminant_delta plus sign verdict (|value| < 1e-8 is "boundary") and an
/// independent root count from solve_cubic.
DiscriminantReport discriminant_report(double a, double p, double m, double delta_value);

struct OrdinarySingularity {
    double x = 0.0;
    double z = 0.0;
    Branch branch = Branch::repelling;
};

/// Equilibria of the full system: roots of m h(x) = f(x) with z = h(x) + lambda.
std::vector<OrdinarySingularity> ordinary_singularities(const DimensionlessParams& q);

/// Landing abscissa of the fast fiber from a fold on the opposite attracting
/// branch: the simple root of h(x) = h(+-1). L- maps to 2, L+ to -2.
double project_fold(FoldSide side, double k);

/// z* = z_- - m_s: the tangent line to the strong canard evaluated at x = -2.
/// Throws DomainError unless the lower folded singularity is a stable node.
double funnel_bound_zstar(const DimensionlessParams& q);

enum class ConditionMode { strict, sharp };
const char* to_string(ConditionMode m);

/// One inequality: its evaluated left-hand side and whether it holds.
struct Condition {
    double value = 0.0;
    bool pass = false;
};

/// Conditions (a)-(i) for a stable folded node on L- with a singular periodic
/// orbit returning to its funnel.
///
/// Every printed form and every sharp variant is evaluated; `mode` selects
/// which of them fill the headline slots `d`, `e`, `i` and enter `verdict`.
///   strict: (e) 2p^2(a+1)^2/delta + 2pa - 6(m+1) < 0,
///           (i) 4(m+4) - 5ap - p > 0.
///   sharp:  (d) replaced by the eigenvalue test for a stable node,
///           (e) 12r + |mu_s| - 2p - 6(m+1) < 0,
///           (i) z+ < z* (value reported as z* - z+).
/// (b) is the two-sided -1 < a < 1 form (value min(a+1, 1-a)).
struct ConditionReport {
    ConditionMode mode = ConditionMode::strict;
    Condition a, b, c, d, e, f, g, h, i;

    Condition b_original;          ///< a > -1
    Condition d_printed;           ///< p^2(a+1)^2 - 6 r delta > 0
    Condition d_eigen;             ///< lower folded singularity is a stable node
    Condition e_printed;
    Condition e_sharp;
    Condition i_printed;           ///< 4(m+4) - 5ap - p > 0
    Condition i_variant;           ///< 4(m+1) - 5ap - p > 0
    Condition i_direct;            ///< z* - z+ > 0
    Condition delta_below_four;    ///< 4 - delta > 0

    double delta = 0.0;
    /// Largest r allowed by (d): p^2(a+1)^2 / (6 delta).
    double r_max = 0.0;
    RootVerdict discriminant_verdict = RootVerdict::boundary;
    double z_plus = 0.0;
    std::optional<double> z_star;
    std::optional<double> mu_strong;
    /// Lower fold is not a stable node; funnel checks were skipped.
    bool no_folded_node = false;

    /// All of (a)-(i) and delta < 4 for the selected mode.
    bool verdict = false;
    /// Only (a)-(d), (g), (h): the conditions not tied to the linear funnel.
    bool verdict_subset = false;
};

ConditionReport check_conditions(const DimensionlessParams& q, ConditionMode mode);

}  // namespace canard
