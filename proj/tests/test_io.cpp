#include "canard/csv.hpp"
#include "canard/error.hpp"
#include "canard/io.hpp"
#include "canard/simulation.hpp"

#include "doctest.h"
#include "fixtures.hpp"

#include <sstream>

using namespace canard;
using io::json;

TEST_CASE("dimensionless parameters round trip through JSON") {
    const auto q = fixtures::p2();
    const json j = io::to_json(q);
    CHECK(j.size() == 8);
    const auto back = io::dimensionless_from_json(json::parse(j.dump()));
    CHECK(back.k == q.k);
    CHECK(back.a == q.a);
    CHECK(back.lambda == q.lambda);
    CHECK(back.epsilon == q.epsilon);
}

TEST_CASE("parameter JSON must carry exactly the known keys") {
    json j = io::to_json(fixtures::p1());
    j["kappa"] = 1.0;
    CHECK_THROWS_WITH_AS(io::dimensionless_from_json(j), doctest::Contains("unknown key 'kappa'"),
                         UsageError);
    j = io::to_json(fixtures::p1());
    j.erase("r");
    CHECK_THROWS_WITH_AS(io::dimensionless_from_json(j), doctest::Contains("missing key 'r'"),
                         UsageError);
    j = io::to_json(fixtures::p1());
    j["p"] = "three";
    CHECK_THROWS_AS(io::dimensionless_from_json(j), UsageError);
    CHECK_THROWS_AS(io::dimensionless_from_json(json::array()), UsageError);
}

TEST_CASE("physical parameters round trip through JSON") {
    const PhysicalParams c = fixtures::physical_for(fixtures::p1());
    const json j = io::to_json(c);
    CHECK(j.size() == 16);
    const PhysicalParams back = io::physical_from_json(j);
    CHECK(back.C_p == c.C_p);
    CHECK(back.T_star == c.T_star);
    CHECK(back.B6 == c.B6);
    json extra = j;
    extra["B7"] = 0.0;
    CHECK_THROWS_AS(io::physical_from_json(extra), UsageError);
}

TEST_CASE("unevaluated conditions serialize as null") {
    auto q = fixtures::p1();
    q.a = 0.5;  // saddle: funnel checks skipped
    const json j = json::parse(io::to_json(check_conditions(q, ConditionMode::sharp)).dump());
    CHECK(j["no_folded_node"] == true);
    CHECK(j["conditions"]["e"]["value"].is_null());
    CHECK(j["conditions"]["e"]["pass"] == false);
    CHECK(j["z_star"].is_null());
    CHECK(j["mode"] == "sharp");
}

TEST_CASE("trajectory CSV round trip is exact") {
    IntegratorConfig cfg;
    const Trajectory<3> traj = simulate(fixtures::p1(0.1), {0.0, 0.0, 0.0}, 5.0, cfg);
    std::stringstream ss;
    io::write_trajectory_csv(ss, traj);
    const io::TimeSeries ts = io::read_trajectory_csv(ss);
    REQUIRE(ts.t.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(ts.t[i] == traj.times[i]);
        CHECK(ts.x[i] == traj.states[i][0]);
        CHECK(ts.z[i] == traj.states[i][2]);
    }
    const json side = io::trajectory_sidecar(traj, cfg, fixtures::p1(0.1));
    CHECK(side["step_stats"]["accepted"] == traj.stats.accepted);
    CHECK(side["config"]["rtol"] == cfg.rtol);
}

TEST_CASE("malformed trajectory CSV") {
    std::istringstream bad_header("time,x,y,z\n0,1,2,3\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(bad_header), UsageError);
    std::istringstream short_row("t,x,y,z\n0,1,2\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(short_row), UsageError);
    std::istringstream garbage("t,x,y,z\n0,1,abc,3\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(garbage), UsageError);
    std::istringstream backwards("t,x,y,z\n1,0,0,0\n0.5,0,0,0\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(backwards), UsageError);
    std::istringstream crlf("t,x,y,z\r\n0,1,2,3\r\n");
    CHECK(io::read_trajectory_csv(crlf).z.at(0) == 3.0);
}

TEST_CASE("number formatting") {
    CHECK(csv::number(0.1) == "0.1");
    CHECK(csv::number(-2.0) == "-2");
    CHECK(csv::number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(csv::parse_number(" 1e-3 ") == 1e-3);
    CHECK_THROWS_AS(csv::parse_number("1.0x"), UsageError);
}

TEST_CASE("orbit and canard CSV headers") {
    const SingularOrbit o = build_singular_orbit(fixtures::p1(), FunnelMethod::numeric);
    std::ostringstream os;
    io::write_orbit_csv(os, o);
    const std::string text = os.str();
    CHECK(text.rfind("segment,kind,x,z\n0,fast_jump,-1,", 0) == 0);
    const json j = io::to_json(o);
    CHECK(j["closed"] == true);
    CHECK(j["segments"].size() == 4);

    std::ostringstream cs;
    io::write_canard_csv(cs, strong_canard(fixtures::p1()));
    CHECK(cs.str().rfind("x,z\n", 0) == 0);
}
