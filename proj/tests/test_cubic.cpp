#include "canard/cubic.hpp"
#include "canard/error.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using canard::solve_cubic;

namespace {

double eval(double c3, double c2, double c1, double c0, double x) {
    return ((c3 * x + c2) * x + c1) * x + c0;
}

// Root count from the shape of the cubic: three real roots iff it has two
// critical points whose values straddle zero. Returns -1 when too close to call.
int critical_point_count(double c3, double c2, double c1, double c0) {
    const double qa = 3 * c3, qb = 2 * c2, qc = c1;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc <= 0) {
        return 1;
    }
    const double s = std::sqrt(disc);
    const double v1 = eval(c3, c2, c1, c0, (-qb - s) / (2 * qa));
    const double v2 = eval(c3, c2, c1, c0, (-qb + s) / (2 * qa));
    const double scale = std::abs(c3) + std::abs(c2) + std::abs(c1) + std::abs(c0);
    if (std::abs(v1) < 1e-9 * scale || std::abs(v2) < 1e-9 * scale) {
        return -1;
    }
    return v1 * v2 < 0 ? 3 : 1;
}

}  // namespace

TEST_CASE("three distinct roots") {
    const auto r = solve_cubic(1, -6, 11, -6);
    REQUIRE(r.count() == 3);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.values[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("one real root") {
    const auto r = solve_cubic(1, 0, 0, -1);
    REQUIRE(r.count() == 1);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("double and triple roots carry multiplicity") {
    // (x - 1)^2 (x + 2)
    const auto d = solve_cubic(1, 0, -3, 2);
    REQUIRE(d.count() == 2);
    CHECK(d.values[0] == doctest::Approx(-2.0));
    CHECK(d.values[1] == doctest::Approx(1.0));
    CHECK(d.multiplicity[0] == 1);
    CHECK(d.multiplicity[1] == 2);

    // (x - 0.5)^3
    const auto t = solve_cubic(1, -1.5, 0.75, -0.125);
    REQUIRE(t.count() == 1);
    CHECK(t.values[0] == doctest::Approx(0.5));
    CHECK(t.multiplicity[0] == 3);
}

TEST_CASE("lower-degree fallbacks") {
    const auto q = solve_cubic(0, 1, -3, 2);
    REQUIRE(q.count() == 2);
    CHECK(q.values[0] == doctest::Approx(1.0));
    CHECK(q.values[1] == doctest::Approx(2.0));

    const auto l = solve_cubic(0, 0, 2, -1);
    REQUIRE(l.count() == 1);
    CHECK(l.values[0] == doctest::Approx(0.5));

    CHECK(solve_cubic(0, 1, 0, 1).count() == 0);
    CHECK_THROWS_AS(solve_cubic(0, 0, 0, 0), canard::DomainError);
}

TEST_CASE("discriminant of a known cubic") {
    // Roots 1, 2, 3: product of squared differences = (1*2*1)^2 = 4.
    CHECK(canard::cubic_discriminant(1, -6, 11, -6) == doctest::Approx(4.0));
    // x^3 + x: -4 p^3 = -4.
    CHECK(canard::cubic_discriminant(1, 0, 1, 0) == doctest::Approx(-4.0));
}

TEST_CASE("random cubics: roots, residuals and discriminant sign") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const double c3 = coef(rng), c2 = coef(rng), c1 = coef(rng), c0 = coef(rng);
        if (std::abs(c3) < 1e-3) {
            continue;
        }
        const int oracle = critical_point_count(c3, c2, c1, c0);
        if (oracle < 0) {
            continue;
        }
        const auto r = solve_cubic(c3, c2, c1, c0);
        CHECK(static_cast<int>(r.count()) == oracle);
        const double disc = canard::cubic_discriminant(c3, c2, c1, c0);
        CHECK((disc > 0) == (oracle == 3));
        const double scale = std::abs(c3) + std::abs(c2) + std::abs(c1) + std::abs(c0);
        for (double x : r.values) {
            const double mag = scale * std::max(1.0, x * x * std::abs(x));
            CHECK(std::abs(eval(c3, c2, c1, c0, x)) <= 1e-11 * mag);
        }
        ++checked;
    }
    CHECK(checked > 1500);
}
