#include "canard/gsp.hpp"

#include "canard/error.hpp"

#include <cmath>
#include <limits>

namespace canard {

Branch branch_of(double x) {
    if (x < -1.0) return Branch::attracting_lower;
    if (x == -1.0) return Branch::fold_lower;
    if (x < 1.0) return Branch::repelling;
    if (x == 1.0) return Branch::fold_upper;
    return Branch::attracting_upper;
}

const char* to_string(Branch b) {
    switch (b) {
        case Branch::attracting_lower: return "M_A-";
        case Branch::fold_lower: return "L-";
        case Branch::repelling: return "M_R";
        case Branch::fold_upper: return "L+";
        case Branch::attracting_upper: return "M_A+";
    }
    return "?";
}

ReducedFlow reduced_vf(const DimensionlessParams& q, double x, double z) {
    ReducedFlow out;
    const double hx = h(x, q.k);
    out.h_prime = dh(x);
    out.rhs = f(x, q) - (q.m + 1.0) * hx - q.lambda + z;
    out.zdot = q.r * (q.lambda + hx - z);
    if (out.h_prime != 0.0) {
        out.xdot = out.rhs / out.h_prime;
    }
    return out;
}

Vec<2> desingularized_vf(const DimensionlessParams& q, const Vec<2>& xz) {
    const double x = xz[0];
    const double z = xz[1];
    const double hx = h(x, q.k);
    return {f(x, q) - (q.m + 1.0) * hx - q.lambda + z, q.r * dh(x) * (q.lambda + hx - z)};
}

double delta(const DimensionlessParams& q) {
    return q.p * (q.a + 1.0) * (q.a + 1.0) - q.b - q.m * (q.k + 2.0);
}

double z_nullcline_lower(const DimensionlessParams& q) { return h(-1.0, q.k) + q.lambda; }

double z_minus(const DimensionlessParams& q) {
    return (q.m + 1.0) * h(-1.0, q.k) + q.lambda - f(-1.0, q);
}

double z_plus(const DimensionlessParams& q) {
    return (q.m + 1.0) * h(1.0, q.k) + q.lambda - f(1.0, q);
}

const char* to_string(FoldSide s) { return s == FoldSide::lower ? "lower" : "upper"; }

const char* to_string(SingularityClass c) {
    switch (c) {
        case SingularityClass::stable_node: return "stable_node";
        case SingularityClass::stable_focus: return "stable_focus";
        case SingularityClass::unstable: return "unstable";
        case SingularityClass::saddle: return "saddle";
        case SingularityClass::degenerate: return "degenerate";
    }
    return "?";
}

Jacobian2 desingularized_jacobian(const DimensionlessParams& q, double x0, double z0) {
    Jacobian2 J;
    const double hp = dh(x0);
    J.entries[0][0] = df(x0, q) - (q.m + 1.0) * hp;
    J.entries[0][1] = 1.0;
    J.entries[1][0] = q.r * (hp * hp + d2h(x0) * (q.lambda + h(x0, q.k) - z0));
    J.entries[1][1] = 0.0 - q.r * hp;  // +0 rather than -0 on the folds
    J.trace = J.entries[0][0] + J.entries[1][1];
    J.det = J.entries[0][0] * J.entries[1][1] - J.entries[0][1] * J.entries[1][0];
    J.discriminant = J.trace * J.trace - 4.0 * J.det;
    return J;
}

SignaturePrediction predicted_signature(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw DomainError("predicted_signature: eigenvalue ratio must lie in (0, 1)");
    }
    const double v = (1.0 + mu) / (2.0 * mu);
    const double nearest = std::round(v);
    SignaturePrediction out;
    if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, v)) {
        out.on_boundary = true;
        out.floor_count = static_cast<int>(nearest);
        out.count = out.floor_count - 1;
    } else {
        out.floor_count = static_cast<int>(std::floor(v));
        out.count = out.floor_count;
    }
    return out;
}

FoldedSingularity jacobian_folded(const DimensionlessParams& q, FoldSide side) {
    FoldedSingularity s;
    s.side = side;
    s.x = side == FoldSide::lower ? -1.0 : 1.0;
    s.z = side == FoldSide::lower ? z_minus(q) : z_plus(q);
    s.jacobian = desingularized_jacobian(q, s.x, s.z);
    const Jacobian2& J = s.jacobian;

    const double scale = std::max(1.0, J.trace * J.trace);
    const bool degenerate = std::abs(J.det) <= 1e-12 * scale;
    if (J.discriminant >= 0.0 || degenerate) {
        // Real pair; q_root avoids cancellation in the small eigenvalue.
        const double sq = std::sqrt(std::max(0.0, J.discriminant));
        const double q_root = -0.5 * (-J.trace + std::copysign(sq, -J.trace));
        double big = q_root;
        double small = (q_root != 0.0) ? J.det / q_root : 0.0;
        if (std::abs(small) > std::abs(big)) {
            std::swap(big, small);
        }
        s.eigen_strong = big;
        s.eigen_weak = small;
        s.slope_strong = big - J.entries[0][0];
        s.slope_weak = small - J.entries[0][0];
    }

    if (degenerate) {
        s.classification = SingularityClass::degenerate;
    } else if (J.det < 0.0) {
        s.classification = SingularityClass::saddle;
    } else if (J.discriminant > 0.0) {
        s.classification =
            J.trace < 0.0 ? SingularityClass::stable_node : SingularityClass::unstable;
    } else {
        s.classification =
            J.trace < 0.0 ? SingularityClass::stable_focus : SingularityClass::unstable;
    }

    if (s.classification == SingularityClass::stable_node) {
        s.mu_ratio = *s.eigen_weak / *s.eigen_strong;
        if (*s.mu_ratio > 0.0 && *s.mu_ratio < 1.0) {
            s.s_predicted = predicted_signature(*s.mu_ratio);
        }
    }
    return s;
}

std::vector<FoldedSingularity> find_folded_singularities(const DimensionlessParams& q) {
    return {jacobian_folded(q, FoldSide::lower), jacobian_folded(q, FoldSide::upper)};
}

std::array<double, 4> nullcline_cubic(double a, double p, double m, double delta_value) {
    const double c = 2.0 * a * p - 3.0 * m;
    const double d = p + 2.0 * a * p - 2.0 * m - delta_value;
    return {m, -p, c, d};
}

const char* to_string(RootVerdict v) {
    switch (v) {
        case RootVerdict::one_real_root: return "one_real_root";
        case RootVerdict::three_real_roots: return "three_real_roots";
        case RootVerdict::boundary: return "boundary";
    }
    return "?";
}

double discriminant_delta(double a, double p, double m, double delta_value) {
    if (m == 0.0) {
        throw DomainError("discriminant_delta: m must be nonzero");
    }
    const double c = -3.0 * m + 2.0 * a * p;
    const double d = -delta_value - 2.0 * m + p + 2.0 * a * p;
    return p * p * c * c - 4.0 * m * c * c * c + 4.0 * p * p * p * d -
           18.0 * m * p * c * d - 27.0 * m * m * d * d;
}

DiscriminantReport discriminant_report(double a, double p, double m, double delta_value) {
    DiscriminantReport out;
    out.value = discriminant_delta(a, p, m, delta_value);
    if (std::abs(out.value) < kDiscriminantBand) {
        out.verdict = RootVerdict::boundary;
    } else {
        out.verdict = out.value < 0.0 ? RootVerdict::one_real_root : RootVerdict::three_real_roots;
    }
    const auto c = nullcline_cubic(a, p, m, delta_value);
    out.root_count = solve_cubic(c[0], c[1], c[2], c[3]).count();
    return out;
}

std::vector<OrdinarySingularity> ordinary_singularities(const DimensionlessParams& q) {
    const RealRoots roots = solve_cubic(q.m, -q.p, 2.0 * q.a * q.p - 3.0 * q.m,
                                        q.m * q.k - q.p * q.a * q.a + q.b);
    std::vector<OrdinarySingularity> out;
    for (double x : roots.values) {
        out.push_back({x, h(x, q.k) + q.lambda, branch_of(x)});
    }
    return out;
}

double project_fold(FoldSide side, double k) {
    // h(x) - h(x_fold) = x^3 - 3x -+ 2 = (x -+ 1)^2 (x +- 2); k cancels.
    const double x_fold = side == FoldSide::lower ? -1.0 : 1.0;
    const RealRoots roots = solve_cubic(1.0, 0.0, -3.0, k - h(x_fold, k));
    for (std::size_t i = 0; i < roots.count(); ++i) {
        if (roots.multiplicity[i] == 1) {
            return roots.values[i];
        }
    }
    throw NumericError("project_fold: no simple root found");
}

double funnel_bound_zstar(const DimensionlessParams& q) {
    const FoldedSingularity node = jacobian_folded(q, FoldSide::lower);
    if (node.classification != SingularityClass::stable_node) {
        throw DomainError(std::string("funnel_bound_zstar: lower folded singularity is ") +
                          to_string(node.classification) + ", not a stable node");
    }
    return node.z - *node.slope_strong;
}

const char* to_string(ConditionMode m) { return m == ConditionMode::strict ? "strict" : "sharp"; }

namespace {

Condition positive(double v) { return {v, v > 0.0}; }
Condition negative(double v) { return {v, v < 0.0}; }

}  // namespace

ConditionReport check_conditions(const DimensionlessParams& q, ConditionMode mode) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ConditionReport rep;
    rep.mode = mode;
    const double dl = delta(q);
    const double pa1 = q.p * (q.a + 1.0);
    const double ap = q.a * q.p;
    rep.delta = dl;
    rep.r_max = pa1 * pa1 / (6.0 * dl);

    rep.a = positive(q.p);
    rep.b_original = positive(q.a + 1.0);
    rep.b = positive(std::min(q.a + 1.0, 1.0 - q.a));
    rep.c = positive(dl);
    rep.d_printed = positive(pa1 * pa1 - 6.0 * q.r * dl);
    rep.e_printed = dl != 0.0 ? negative(2.0 * pa1 * pa1 / dl + 2.0 * ap - 6.0 * (q.m + 1.0))
                              : Condition{nan, false};
    rep.f = positive(pa1 - 2.0);
    rep.g = positive(4.0 * (ap - q.m) - dl);
    if (q.m != 0.0) {
        const DiscriminantReport disc = discriminant_report(q.a, q.p, q.m, dl);
        rep.h = {disc.value, disc.verdict == RootVerdict::one_real_root};
        rep.discriminant_verdict = disc.verdict;
    } else {
        rep.h = {nan, false};
    }
    rep.i_printed = positive(4.0 * (q.m + 4.0) - 5.0 * ap - q.p);
    rep.i_variant = positive(4.0 * (q.m + 1.0) - 5.0 * ap - q.p);
    rep.delta_below_four = positive(4.0 - dl);
    rep.z_plus = z_plus(q);

    const FoldedSingularity node = jacobian_folded(q, FoldSide::lower);
    const bool is_node = node.classification == SingularityClass::stable_node;
    rep.d_eigen = {node.jacobian.discriminant, is_node};
    rep.no_folded_node = !is_node;
    if (is_node) {
        const double mu_s = std::abs(*node.eigen_strong);
        rep.mu_strong = mu_s;
        rep.e_sharp = negative(12.0 * q.r + mu_s - 2.0 * q.p - 6.0 * (q.m + 1.0));
        rep.z_star = node.z - *node.slope_strong;
        rep.i_direct = positive(*rep.z_star - rep.z_plus);
    } else {
        rep.e_sharp = {nan, false};
        rep.i_direct = {nan, false};
    }

    if (mode == ConditionMode::strict) {
        rep.d = rep.d_printed;
        rep.e = rep.e_printed;
        rep.i = rep.i_printed;
    } else {
        rep.d = rep.d_eigen;
        rep.e = rep.e_sharp;
        rep.i = rep.i_direct;
    }
    rep.verdict_subset = rep.a.pass && rep.b.pass && rep.c.pass && rep.d.pass && rep.g.pass &&
                         rep.h.pass;
    rep.verdict = rep.verdict_subset && rep.e.pass && rep.f.pass && rep.i.pass &&
                  rep.delta_below_four.pass;
    return rep;
}

}  // namespace canard
