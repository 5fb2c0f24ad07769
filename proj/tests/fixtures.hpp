#pragma once

// Parameter sets and independent helpers shared by the tests.

#include "canard/model.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace fixtures {

// Folded node with a closed singular orbit.
inline canard::DimensionlessParams p1(double epsilon = 0.01) {
    return {.k = 4.0, .p = 3.0, .a = 0.8, .b = 2.1, .m = 1.0, .lambda = 1.0, .r = 1.0,
            .epsilon = epsilon};
}

// Set inside the analytic region, delta ~ 1.
inline canard::DimensionlessParams p2(double epsilon = 0.001) {
    return {.k = 2.2, .p = 1.05, .a = 0.91, .b = 0.31, .m = 0.6, .lambda = 1.0, .r = 0.3,
            .epsilon = epsilon};
}

// Builds a physical parameter set whose scaling reproduces q exactly. The
// albedo, diffusion width and B1, B2, B5, T_tilde are fixed; everything else is
// solved from the definitions of the dimensionless groups.
inline canard::PhysicalParams physical_for(const canard::DimensionlessParams& q) {
    canard::PhysicalParams c;
    c.Q = 342.0;
    c.alpha_max = 0.7;
    c.alpha_min = 0.3;
    c.D = 10.0;
    c.B1 = 0.05;
    c.B2 = 1.5;
    c.B5 = 1.0;
    c.T_tilde = 10.0;
    const double G = c.Q * (c.alpha_max - c.alpha_min);
    const double S0 = c.D * std::sqrt((G - 2.0 * c.D * c.B2) / G);
    // Cubic coefficient of the scaled energy balance equal to one.
    const double A0 = G * S0 * S0 * S0 / (6.0 * c.D * c.D * c.D * c.B1);
    c.B6 = q.r * c.B5;
    c.B3 = q.m * c.B5;
    c.P = q.p * c.B5 * A0 / (c.B3 * S0 * S0);
    c.T_star = c.T_tilde + q.a * S0;
    c.B4 = q.b * c.B5 * A0 / c.B3;
    c.L = q.lambda * c.B5 * A0;
    const double K = -q.k * c.B1 * A0;
    c.B0 = c.Q * (1.0 - 0.5 * (c.alpha_max + c.alpha_min)) - c.B2 * c.T_tilde - K;
    c.C_p = q.epsilon * c.B1 * A0 / (c.B5 * S0);
    return c;
}

// Classical fixed-step RK4 for scalar dz/dx = g(x, z) from x0 to x1.
inline double rk4_scalar(const std::function<double(double, double)>& g, double x0, double z0,
                         double x1, int steps) {
    const double hstep = (x1 - x0) / steps;
    double x = x0, z = z0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = g(x, z);
        const double k2 = g(x + hstep / 2, z + hstep / 2 * k1);
        const double k3 = g(x + hstep / 2, z + hstep / 2 * k2);
        const double k4 = g(x + hstep, z + hstep * k3);
        z += hstep / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        x += hstep;
    }
    return z;
}

}  // namespace fixtures
