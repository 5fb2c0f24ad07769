#include "canard/error.hpp"
#include "canard/gsp.hpp"
#include "canard/sweep.hpp"

#include "doctest.h"
#include "fixtures.hpp"

#include <cmath>
#include <sstream>

using namespace canard;

namespace {

SweepSpec small_grid() {
    SweepSpec spec;
    // Brackets the thin strict region of the delta = 1.3 slice.
    spec.a = {0.7, 1.0, 21};
    spec.p = {0.9, 1.5, 15};
    spec.m = {0.5, 0.7, 4};
    spec.delta = 1.3;
    spec.r = 0.3;
    return spec;
}

std::string csv_of(const std::vector<RegionRow>& rows, SweepEmit emit = SweepEmit::full) {
    std::ostringstream os;
    write_region_csv(os, rows, emit);
    return os.str();
}

}  // namespace

TEST_CASE("axis sampling") {
    CHECK(AxisRange{0.0, 1.0, 1}.at(0) == 0.0);
    CHECK(AxisRange{0.0, 1.0, 5}.at(4) == 1.0);
    CHECK(AxisRange{0.0, 1.0, 5}.at(2) == 0.5);
}

TEST_CASE("P2 passes in sharp mode, P1 fails") {
    const auto q2 = fixtures::p2();
    SweepSpec spec;
    spec.a = {q2.a, q2.a, 1};
    spec.p = {q2.p, q2.p, 1};
    spec.m = {q2.m, q2.m, 1};
    spec.delta = delta(q2);
    spec.k = q2.k;
    spec.lambda = q2.lambda;
    spec.r = q2.r;
    spec.mode = ConditionMode::sharp;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].b == doctest::Approx(q2.b).epsilon(1e-12));
    CHECK(rows[0].verdict);

    const auto q1 = fixtures::p1();
    spec.a = {q1.a, q1.a, 1};
    spec.p = {q1.p, q1.p, 1};
    spec.m = {q1.m, q1.m, 1};
    spec.delta = delta(q1);
    spec.k = q1.k;
    spec.lambda = q1.lambda;
    spec.r = q1.r;
    const auto rows1 = run_sweep(spec);
    CHECK(rows1[0].b == doctest::Approx(q1.b).epsilon(1e-12));
    CHECK_FALSE(rows1[0].verdict);
    CHECK_FALSE(rows1[0].cond[4]);  // (e)
    CHECK_FALSE(rows1[0].cond[8]);  // (i)
}

TEST_CASE("rows follow the grid and agree with per-point reports") {
    const SweepSpec spec = small_grid();
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 21u * 15u * 4u);
    std::size_t idx = 0;
    for (int ia = 0; ia < spec.a.count; ++ia) {
        for (int ip = 0; ip < spec.p.count; ++ip) {
            for (int im = 0; im < spec.m.count; ++im, ++idx) {
                const RegionRow& row = rows[idx];
                CHECK(row.a == spec.a.at(ia));
                CHECK(row.p == spec.p.at(ip));
                CHECK(row.m == spec.m.at(im));
                const DimensionlessParams q = row.params();
                CHECK(std::abs(delta(q) - spec.delta) <= 1e-12);
                const ConditionReport rep = check_conditions(q, spec.mode);
                CHECK(row.verdict == rep.verdict);
                CHECK(row.cond[3] == rep.d.pass);
            }
        }
    }
}

TEST_CASE("output does not depend on the thread count") {
    SweepSpec spec = small_grid();
    spec.threads = 1;
    const std::string one = csv_of(run_sweep(spec));
    for (unsigned n : {2u, 3u, 8u}) {
        spec.threads = n;
        CHECK(csv_of(run_sweep(spec)) == one);
    }
    CHECK(csv_of(run_sweep(spec)) == one);
}

TEST_CASE("subset region contains the full region") {
    SweepSpec spec = small_grid();
    const auto full = run_sweep(spec);
    spec.subset = true;
    const auto subset = run_sweep(spec);
    REQUIRE(full.size() == subset.size());
    std::size_t n_full = 0, n_subset = 0;
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (full[i].verdict) {
            CHECK(subset[i].verdict);
        }
        n_full += full[i].verdict;
        n_subset += subset[i].verdict;
    }
    CHECK(n_full > 0);
    CHECK(n_subset > n_full);
}

TEST_CASE("CSV layout") {
    const auto rows = run_sweep(small_grid());
    const std::string full = csv_of(rows);
    CHECK(full.rfind("a,p,m,delta,cond_a,cond_b,cond_c,cond_d,cond_e,cond_f,cond_g,cond_h,"
                     "cond_i,r_max,verdict\n",
                     0) == 0);
    std::size_t lines = 0;
    for (char c : full) {
        lines += c == '\n';
    }
    CHECK(lines == rows.size() + 1);

    const std::string region = csv_of(rows, SweepEmit::region);
    std::size_t region_lines = 0, passing = 0;
    for (char c : region) {
        region_lines += c == '\n';
    }
    for (const auto& r : rows) {
        passing += r.verdict;
    }
    CHECK(region_lines == passing + 1);
}

TEST_CASE("invalid grids") {
    SweepSpec spec = small_grid();
    spec.p.count = 0;
    CHECK_THROWS_AS(run_sweep(spec), UsageError);
    spec = small_grid();
    spec.a = {1.0, -1.0, 3};
    CHECK_THROWS_AS(run_sweep(spec), UsageError);
    spec = small_grid();
    spec.r = 0.0;
    CHECK_THROWS_AS(run_sweep(spec), UsageError);
}
