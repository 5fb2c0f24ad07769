#include "canard/cubic.hpp"

#include "canard/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace canard {
namespace {

constexpr double kRepeatTol = 1e-12;

double eval(double c3, double c2, double c1, double c0, double x) {
    return ((c3 * x + c2) * x + c1) * x + c0;
}

double polish(double c3, double c2, double c1, double c0, double x) {
    for (int it = 0; it < 3; ++it) {
        const double fx = eval(c3, c2, c1, c0, x);
        const double dfx = (3.0 * c3 * x + 2.0 * c2) * x + c1;
        if (dfx == 0.0) {
            break;
        }
        const double next = x - fx / dfx;
        if (!std::isfinite(next) ||
            std::abs(eval(c3, c2, c1, c0, next)) >= std::abs(fx)) {
            break;
        }
        x = next;
    }
    return x;
}

RealRoots solve_quadratic(double c2, double c1, double c0) {
    RealRoots out;
    if (c2 == 0.0) {
        if (c1 == 0.0) {
            if (c0 == 0.0) {
                throw DomainError("solve_cubic: all coefficients are zero");
            }
            return out;
        }
        out.values.push_back(-c0 / c1);
        out.multiplicity.push_back(1);
        return out;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    const double scale = c1 * c1 + std::abs(4.0 * c2 * c0);
    if (std::abs(disc) <= kRepeatTol * scale) {
        out.values.push_back(-c1 / (2.0 * c2));
        out.multiplicity.push_back(2);
        return out;
    }
    if (disc < 0.0) {
        return out;
    }
    // Citardauq form avoids cancellation.
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    double r1 = q / c2;
    double r2 = c0 / q;
    if (r1 > r2) {
        std::swap(r1, r2);
    }
    out.values = {r1, r2};
    out.multiplicity = {1, 1};
    return out;
}

}  // namespace

double cubic_discriminant(double c3, double c2, double c1, double c0) {
    return 18.0 * c3 * c2 * c1 * c0 - 4.0 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
           4.0 * c3 * c1 * c1 * c1 - 27.0 * c3 * c3 * c0 * c0;
}

RealRoots solve_cubic(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0) {
        return solve_quadratic(c2, c1, c0);
    }
    // Monic, then depress with x = t - A/3.
    const double A = c2 / c3;
    const double B = c1 / c3;
    const double C = c0 / c3;
    const double shift = A / 3.0;
    const double p = B - A * A / 3.0;
    const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;

    const double four_p3 = 4.0 * p * p * p;
    const double q2_27 = 27.0 * q * q;
    const double d = -(four_p3 + q2_27);
    const double scale = std::abs(four_p3) + q2_27;

    RealRoots out;
    if (scale == 0.0 || std::abs(d) <= kRepeatTol * scale) {
        if (std::abs(p) <= kRepeatTol * (1.0 + A * A)) {
            out.values.push_back(polish(c3, c2, c1, c0, -shift));
            out.multiplicity.push_back(3);
            return out;
        }
        const double simple = 3.0 * q / p - shift;
        const double dbl = -1.5 * q / p - shift;
        if (simple < dbl) {
            out.values = {polish(c3, c2, c1, c0, simple), dbl};
            out.multiplicity = {1, 2};
        } else {
            out.values = {dbl, polish(c3, c2, c1, c0, simple)};
            out.multiplicity = {2, 1};
        }
        return out;
    }

    if (d > 0.0) {
        // Three distinct real roots, p < 0.
        const double amp = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * amp), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
        for (int k = 0; k < 3; ++k) {
            const double t = amp * std::cos(phi - third_turn * k);
            out.values.push_back(polish(c3, c2, c1, c0, t - shift));
        }
        std::sort(out.values.begin(), out.values.end());
        out.multiplicity = {1, 1, 1};
        return out;
    }

    // One real root.
    const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u = std::cbrt(-q / 2.0 + std::copysign(s, -q));
    const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
    out.values.push_back(polish(c3, c2, c1, c0, t - shift));
    out.multiplicity.push_back(1);
    return out;
}

}  // namespace canard
