#pragma once

#include <array>
#include <vector>

namespace canard {

/// Dimensional constants of the energy-balance / carbon-cycle model.
///
/// Units follow the model equations: temperatures in K, carbon in PgC and time
/// in years. C_p must be expressed so that flux / C_p yields K per year; no
/// J <-> W*yr conversion is applied. B6 is a rate (1/yr) and P is a drawdown
/// curvature (PgC/K^2), which makes the carbon equations dimensionally
/// consistent and r = B6/B5 dimensionless.
struct PhysicalParams {
    double C_p = 0.0;
    double Q = 0.0;
    double alpha_max = 0.0;
    double alpha_min = 0.0;
    double D = 0.0;
    double T_tilde = 0.0;
    double T_star = 0.0;
    double B0 = 0.0;
    double B1 = 0.0;
    double B2 = 0.0;
    double B3 = 0.0;
    double B4 = 0.0;
    double B5 = 0.0;
    double B6 = 0.0;
    double P = 0.0;
    double L = 0.0;

    /// Throws DomainError naming the first violated invariant.
    void validate() const;

    /// Q*(alpha_max - alpha_min), the albedo contrast in W/m^2.
    [[nodiscard]] double albedo_contrast() const { return Q * (alpha_max - alpha_min); }
};

/// Parameters of the dimensionless fast/slow system.
struct DimensionlessParams {
    double k = 0.0;
    double p = 0.0;
    double a = 0.0;
    double b = 0.0;
    double m = 0.0;
    double lambda = 0.0;
    double r = 0.0;
    double epsilon = 0.0;

    /// Throws DomainError unless epsilon > 0 and r > 0.
    void validate() const;
};

/// Scaled temperature x, atmospheric carbon y and oceanic carbon z.
struct State3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const State3&, const State3&) = default;
};

/// Shifted temperature S = T - T_tilde, atmospheric carbon A, ocean carbon H.
struct PhysicalState {
    double S = 0.0;
    double A = 0.0;
    double H = 0.0;
};

struct Scales {
    double S0 = 0.0;  // K
    double A0 = 0.0;  // PgC
    double H0 = 0.0;  // PgC
    double t0 = 0.0;  // yr
};

/// Result of nondimensionalize. K is kept so every model form built from the
/// same physical set shares one value.
struct Nondimensionalization {
    DimensionlessParams params;
    Scales scales;
    double K = 0.0;
};

// Scalar building blocks of the critical manifold and drawdown term.
[[nodiscard]] constexpr double h(double x, double k) { return x * x * x - 3.0 * x + k; }
[[nodiscard]] constexpr double dh(double x) { return 3.0 * x * x - 3.0; }
[[nodiscard]] constexpr double d2h(double x) { return 6.0 * x; }
[[nodiscard]] constexpr double f(double x, const DimensionlessParams& q) {
    return q.p * (x - q.a) * (x - q.a) - q.b;
}
[[nodiscard]] constexpr double df(double x, const DimensionlessParams& q) {
    return 2.0 * q.p * (x - q.a);
}
/// F(x, y) = y - h(x); the layer problem is x' = F.
[[nodiscard]] constexpr double F(double x, double y, double k) { return y - h(x, k); }

/// tanh albedo of the shifted temperature S.
double albedo(double S, const PhysicalParams& phys);

/// K = Q(1 - (alpha_max + alpha_min)/2) - (B0 + B2*T_tilde).
double cubic_offset_K(const PhysicalParams& phys);

/// Shifted dimensional model with tanh albedo; derivatives per year.
PhysicalState vf_dimensional_tanh(const PhysicalParams& phys, const PhysicalState& s);

/// Shifted dimensional model with the cubic approximation of the energy balance.
PhysicalState vf_dimensional_cubic(const PhysicalParams& phys, const PhysicalState& s);

/// Dimensionless fast/slow vector field in slow time. Throws DomainError if
/// epsilon <= 0 (the singular limit has no vector field in this form).
State3 vf_full(const DimensionlessParams& q, const State3& s);

/// Maps a physical parameter set to the dimensionless system.
///
/// The scales are chosen so the cubic energy balance becomes y - x^3 + 3x - k:
///   S0 = D*sqrt((G - 2 D B2)/G),  A0 = G S0^3 / (6 D^3 B1),
///   H0 = (B5/B6) A0,               t0 = 1/B5,
/// with G = Q(alpha_max - alpha_min). Throws DomainError("no real scaling ...")
/// when G - 2 D B2 <= 0.
Nondimensionalization nondimensionalize(const PhysicalParams& phys);

State3 to_dimensionless(const PhysicalState& s, const Scales& sc);
PhysicalState to_physical(const State3& s, const Scales& sc);

enum class Stability { attracting, repelling, fold };

struct Equilibrium {
    double x = 0.0;
    int multiplicity = 1;
    Stability stability = Stability::attracting;
};

/// Roots of y = h(x) for frozen y, ascending, tagged by the sign of h'(x).
std::vector<Equilibrium> energy_balance_equilibria(double y, double k);

const char* to_string(Stability s);

}  // namespace canard
