#include "canard/canard.hpp"
#include "canard/error.hpp"

#include "doctest.h"
#include "fixtures.hpp"

#include <cmath>

using namespace canard;

namespace {

// dz/dx of the desingularized flow, written out directly.
double slope(const DimensionlessParams& q, double x, double z) {
    const double hx = x * x * x - 3 * x + q.k;
    const double hp = 3 * x * x - 3;
    const double xdot = q.p * (x - q.a) * (x - q.a) - q.b - (q.m + 1) * hx - q.lambda + z;
    const double zdot = q.r * hp * (q.lambda + hx - z);
    return zdot / xdot;
}

// Strong canard from the lower node down to x = -2 as a graph z(x).
double canard_oracle(const DimensionlessParams& q, double ms, double zm) {
    const double s = 1e-6;
    return fixtures::rk4_scalar([&q](double x, double z) { return slope(q, x, z); }, -1.0 - s,
                                zm - ms * s, -2.0, 200000);
}

// Slow arc on M_A+ from (2, z_-) to the upper fold.
double crossing_oracle(const DimensionlessParams& q, double zm) {
    return fixtures::rk4_scalar([&q](double x, double z) { return slope(q, x, z); }, 2.0, zm,
                                1.0, 100000);
}

}  // namespace

TEST_CASE("strong canard at P1 against a graph integration") {
    const auto q = fixtures::p1();
    const CanardApprox c = strong_canard(q);
    REQUIRE(c.status == CanardStatus::reached_stop);
    REQUIRE(c.z_at_stop);
    const double oracle = canard_oracle(q, c.slope_strong, c.z_minus);
    CHECK(*c.z_at_stop == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(*c.z_at_stop == doctest::Approx(4.955988692698).epsilon(1e-8));
    REQUIRE(c.richardson_delta);
    CHECK(*c.richardson_delta < 1e-7);
    CHECK(c.samples.back()[0] == doctest::Approx(-2.0).epsilon(1e-9));
    const auto mid = c.z_at(-1.5);
    REQUIRE(mid);
    const double mid_oracle =
        fixtures::rk4_scalar([&q](double x, double z) { return slope(q, x, z); }, -1.0 - 1e-6,
                             c.z_minus - c.slope_strong * 1e-6, -1.5, 100000);
    CHECK(*mid == doctest::Approx(mid_oracle).epsilon(1e-5));
    CHECK_FALSE(c.z_at(-3.0).has_value());
}

TEST_CASE("canard slope at the node converges to the strong eigendirection") {
    const auto q = fixtures::p1();
    // The slope is probed 100 offsets from the node, so the error is first
    // order in the offset.
    double previous = INFINITY;
    double offset = 1e-4;
    for (int i = 0; i < 5; ++i, offset /= 2) {
        CanardOptions opts;
        opts.seed_offset = offset;
        const CanardApprox c = strong_canard(q, opts);
        const double err = std::abs(c.tangent_slope_at_node - c.slope_strong) / c.slope_strong;
        CHECK(err < 0.01);
        if (std::isfinite(previous)) {
            CHECK(err < 0.7 * previous);
        }
        previous = err;
    }
    CHECK(previous < 1e-3);
}

TEST_CASE("canard at P2 stays above its tangent line") {
    const auto q = fixtures::p2();
    const CanardApprox c = strong_canard(q);
    REQUIRE(c.status == CanardStatus::reached_stop);
    int inside = 0;
    for (const auto& s : c.samples) {
        if (s[0] >= -2.0 && s[0] <= -1.0) {
            CHECK(s[1] >= c.slope_strong * (s[0] + 1.0) + c.z_minus - 1e-12);
            ++inside;
        }
    }
    CHECK(inside > 10);
    const double oracle = canard_oracle(q, c.slope_strong, c.z_minus);
    CHECK(*c.z_at_stop == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("canard needs a stable folded node") {
    auto q = fixtures::p1();
    q.a = 0.5;
    CHECK_THROWS_AS(strong_canard(q), DomainError);
    CHECK_THROWS_AS(build_singular_orbit(q, FunnelMethod::numeric), DomainError);
    CanardOptions bad;
    bad.x_stop = -0.5;
    CHECK_THROWS_AS(strong_canard(fixtures::p1(), bad), DomainError);
}

TEST_CASE("singular orbit at P1 closes through the numeric funnel") {
    const auto q = fixtures::p1();
    const SingularOrbit o = build_singular_orbit(q, FunnelMethod::numeric);
    CHECK(o.status == OrbitStatus::ok);
    CHECK(o.transversal);
    CHECK(o.crossing_z == doctest::Approx(crossing_oracle(q, o.z_minus)).epsilon(1e-9));
    CHECK(o.crossing_z == doctest::Approx(4.565663891894993).epsilon(1e-9));
    CHECK(o.crossing_xdot == doctest::Approx(o.crossing_z - z_plus(q)).epsilon(1e-9));
    CHECK(o.landing[0] == -2.0);
    CHECK(o.in_funnel_numeric);
    CHECK_FALSE(o.in_funnel_linear);
    CHECK(o.closed);
    REQUIRE(o.segments.size() == 4);
    CHECK(o.segments[0].kind == SegmentKind::fast_jump);
    CHECK(o.segments[1].kind == SegmentKind::slow_arc);
    CHECK(o.segments[2].kind == SegmentKind::fast_jump);
    CHECK(o.segments[3].kind == SegmentKind::slow_arc);
    CHECK(o.segments[3].samples.back()[0] == -1.0);

    // The tangent-line bound is conservative here.
    const SingularOrbit lin = build_singular_orbit(q, FunnelMethod::linear);
    CHECK_FALSE(lin.closed);
}

TEST_CASE("orbit misses the funnel past the closure boundary") {
    auto q = fixtures::p1();
    q.a = 0.83;
    const SingularOrbit o = build_singular_orbit(q, FunnelMethod::numeric);
    CHECK(o.status == OrbitStatus::ok);
    CHECK_FALSE(o.in_funnel_numeric);
    CHECK_FALSE(o.closed);
    REQUIRE(o.canard_z_at_landing);
    CHECK(o.crossing_z > *o.canard_z_at_landing);
}
