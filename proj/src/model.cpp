#include "canard/model.hpp"

#include "canard/cubic.hpp"
#include "canard/error.hpp"

#include <cmath>
#include <string>

namespace canard {
namespace {

void require(bool ok, const char* what) {
    if (!ok) {
        throw DomainError(std::string("invalid parameters: ") + what);
    }
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void PhysicalParams::validate() const {
    const double all[] = {C_p, Q, alpha_max, alpha_min, D, T_tilde, T_star, B0,
                          B1,  B2, B3,       B4,        B5, B6,     P,      L};
    for (double v : all) {
        require(finite(v), "all fields must be finite");
    }
    require(C_p > 0.0, "C_p > 0");
    require(Q > 0.0, "Q > 0");
    require(D > 0.0, "D > 0");
    require(alpha_min > 0.0, "alpha_min > 0");
    require(alpha_min < alpha_max, "alpha_min < alpha_max");
    require(alpha_max <= 1.0, "alpha_max <= 1");
    require(B0 > 0.0 && B1 > 0.0 && B2 > 0.0 && B3 > 0.0 && B4 > 0.0 && B5 > 0.0 &&
                B6 > 0.0,
            "B0..B6 > 0");
    require(P > 0.0, "P > 0");
    require(L > 0.0, "L > 0");
}

void DimensionlessParams::validate() const {
    const double all[] = {k, p, a, b, m, lambda, r, epsilon};
    for (double v : all) {
        require(finite(v), "all fields must be finite");
    }
    require(epsilon > 0.0, "epsilon > 0");
    require(r > 0.0, "r > 0");
}

double albedo(double S, const PhysicalParams& phys) {
    if (!finite(S)) {
        throw DomainError("albedo: non-finite temperature");
    }
    if (!(phys.D > 0.0)) {
        throw DomainError("albedo: D must be positive");
    }
    const double mid = 0.5 * (phys.alpha_max + phys.alpha_min);
    const double half = 0.5 * (phys.alpha_max - phys.alpha_min);
    return mid - half * std::tanh(S / phys.D);
}

double cubic_offset_K(const PhysicalParams& phys) {
    return phys.Q * (1.0 - 0.5 * (phys.alpha_max + phys.alpha_min)) -
           (phys.B0 + phys.B2 * phys.T_tilde);
}

namespace {

// Carbon equations are shared by both dimensional forms.
void carbon_rates(const PhysicalParams& c, const PhysicalState& s, PhysicalState& out) {
    const double dS = s.S - (c.T_star - c.T_tilde);
    const double ocean_flux = c.L + c.B5 * s.A - c.B6 * s.H;
    out.A = c.B3 * (c.P * dS * dS - c.B4 - s.A) - ocean_flux;
    out.H = ocean_flux;
}

void require_finite_state(const PhysicalState& s) {
    if (!finite(s.S) || !finite(s.A) || !finite(s.H)) {
        throw DomainError("non-finite state");
    }
}

}  // namespace

PhysicalState vf_dimensional_tanh(const PhysicalParams& c, const PhysicalState& s) {
    require_finite_state(s);
    PhysicalState out;
    const double absorbed = c.Q * (1.0 - albedo(s.S, c));
    const double outgoing = c.B0 + c.B2 * c.T_tilde - c.B1 * s.A + c.B2 * s.S;
    out.S = (absorbed - outgoing) / c.C_p;
    carbon_rates(c, s, out);
    return out;
}

PhysicalState vf_dimensional_cubic(const PhysicalParams& c, const PhysicalState& s) {
    require_finite_state(s);
    PhysicalState out;
    const double G = c.albedo_contrast();
    const double D3 = c.D * c.D * c.D;
    out.S = (c.B1 * s.A - G / (6.0 * D3) * s.S * s.S * s.S +
             (G / (2.0 * c.D) - c.B2) * s.S + cubic_offset_K(c)) /
            c.C_p;
    carbon_rates(c, s, out);
    return out;
}

State3 vf_full(const DimensionlessParams& q, const State3& s) {
    if (!(q.epsilon > 0.0)) {
        throw DomainError("vf_full: epsilon must be > 0; use the reduced or layer problem");
    }
    const double dx = s.x - q.a;
    return {
        (s.y - s.x * s.x * s.x + 3.0 * s.x - q.k) / q.epsilon,
        q.p * dx * dx - q.b - q.m * s.y - (q.lambda + s.y) + s.z,
        q.r * (q.lambda + s.y - s.z),
    };
}

Nondimensionalization nondimensionalize(const PhysicalParams& phys) {
    phys.validate();
    const double G = phys.albedo_contrast();
    const double margin = G - 2.0 * phys.D * phys.B2;
    if (!(margin > 0.0)) {
        throw DomainError(
            "no real scaling: requires Q*(alpha_max - alpha_min) - 2*D*B2 > 0, got " +
            std::to_string(margin));
    }
    const double D3 = phys.D * phys.D * phys.D;

    Nondimensionalization out;
    Scales& sc = out.scales;
    sc.S0 = phys.D * std::sqrt(margin / G);
    sc.A0 = G * sc.S0 * sc.S0 * sc.S0 / (6.0 * D3 * phys.B1);
    sc.H0 = phys.B5 / phys.B6 * sc.A0;
    sc.t0 = 1.0 / phys.B5;

    out.K = cubic_offset_K(phys);
    DimensionlessParams& q = out.params;
    const double B1A0 = phys.B1 * sc.A0;
    const double B5A0 = phys.B5 * sc.A0;
    q.k = -out.K / B1A0;
    q.p = phys.B3 * phys.P * sc.S0 * sc.S0 / B5A0;
    q.a = (phys.T_star - phys.T_tilde) / sc.S0;
    q.b = phys.B3 * phys.B4 / B5A0;
    q.m = phys.B3 / phys.B5;
    q.lambda = phys.L / B5A0;
    q.r = phys.B6 / phys.B5;
    q.epsilon = phys.B5 * phys.C_p * sc.S0 / B1A0;
    return out;
}

State3 to_dimensionless(const PhysicalState& s, const Scales& sc) {
    return {s.S / sc.S0, s.A / sc.A0, s.H / sc.H0};
}

PhysicalState to_physical(const State3& s, const Scales& sc) {
    return {s.x * sc.S0, s.y * sc.A0, s.z * sc.H0};
}

std::vector<Equilibrium> energy_balance_equilibria(double y, double k) {
    const RealRoots roots = solve_cubic(1.0, 0.0, -3.0, k - y);
    std::vector<Equilibrium> out;
    out.reserve(roots.count());
    for (std::size_t i = 0; i < roots.count(); ++i) {
        Equilibrium e;
        e.x = roots.values[i];
        e.multiplicity = roots.multiplicity[i];
        if (e.multiplicity > 1) {
            e.stability = Stability::fold;
        } else if (std::abs(e.x) > 1.0) {
            e.stability = Stability::attracting;
        } else if (std::abs(e.x) < 1.0) {
            e.stability = Stability::repelling;
        } else {
            e.stability = Stability::fold;
        }
        out.push_back(e);
    }
    return out;
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::attracting: return "attracting";
        case Stability::repelling: return "repelling";
        case Stability::fold: return "fold";
    }
    return "unknown";
}

}  // namespace canard
