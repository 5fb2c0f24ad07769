#pragma once

#include <vector>

namespace canard {

/// Distinct real roots of a polynomial of degree <= 3, ascending, with multiplicities.
struct RealRoots {
    std::vector<double> values;
    std::vector<int> multiplicity;

    [[nodiscard]] std::size_t count() const { return values.size(); }
};

/// Discriminant of c3 x^3 + c2 x^2 + c1 x + c0.
/// Positive: three distinct real roots. Negative: one real root.
double cubic_discriminant(double c3, double c2, double c1, double c0);

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 = 0.
///
/// Closed form (trigonometric when three real roots exist, Cardano otherwise)
/// followed by a Newton polish on the original coefficients. Repeated roots are
/// detected with a relative tolerance on the depressed-cubic discriminant and
/// returned once with their multiplicity. Degenerate leading coefficients fall
/// back to the quadratic/linear formulas. Throws DomainError if all
/// coefficients vanish.
RealRoots solve_cubic(double c3, double c2, double c1, double c0);

}  // namespace canard
