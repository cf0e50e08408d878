#include <catch2/catch_amalgamated.hpp>

#include "nav/environments.hpp"
#include "nav/providers.hpp"
#include "nav/replan.hpp"

using namespace nav;

TEST_CASE("replan_around detours the oracle path clear of the estimate") {
    const EnvironmentMap map = builtin_environment("env_b");
    const PlannerConfig cfg = PlannerConfig::for_environment("env_b");
    const SafetyConfig safety;
    const TargetObject* target = map.find_object("Room-number-plate-106");
    REQUIRE(target != nullptr);

    // estimate sits on the direct start->target leg
    const Circle estimate{{2.5, 0.725}, 0.3};
    OracleProvider oracle;
    const Pose pose{0.0, 0.0, 0.3};
    const ReplanResult r =
        replan_around(map, pose, *target, estimate, cfg, safety, oracle);
    REQUIRE(r.ok());
    CHECK(r.path->validated);
    for (const auto& w : r.path->waypoints) {
        const double clearance = distance(w, estimate.center) - estimate.radius;
        CHECK(clearance > safety.d_slowstop);
        CHECK(map.within_margin(w));
    }
    CHECK(distance(r.path->waypoints.back(), target->position) <= cfg.tolerance_t);
    CHECK(r.stats.attempts == 1);
    CHECK(r.stats.successes == 1);
}

TEST_CASE("an off-path estimate leaves the oracle route unchanged") {
    const EnvironmentMap map = builtin_environment("env_b");
    const PlannerConfig cfg = PlannerConfig::for_environment("env_b");
    const SafetyConfig safety;
    const TargetObject* target = map.find_object("Room-number-plate-106");
    const Pose pose{0.0, 0.0, 0.0};

    const OraclePlanResult unobstructed = oracle_plan(map, pose, *target, cfg);
    REQUIRE(unobstructed.ok);
    Path reference;
    reference.waypoints = unobstructed.points;

    const Circle far_away{{0.5, -1.3}, 0.05};  // nowhere near the leg
    OracleProvider oracle;
    const ReplanResult r = replan_around(map, pose, *target, far_away, cfg, safety, oracle);
    REQUIRE(r.ok());
    CHECK(r.path->polyline_length(pose.position()) ==
          Catch::Approx(reference.polyline_length(pose.position())).margin(1e-6));
}

TEST_CASE("a provider that never yields a valid path fails the replan") {
    const EnvironmentMap map = builtin_environment("env_a");
    const PlannerConfig cfg = PlannerConfig::for_environment("env_a");
    const SafetyConfig safety;
    const TargetObject* target = map.find_object("Window");
    StubProvider stub({"still nothing"});
    const ReplanResult r = replan_around(map, {0, 0, 0}, *target, {{5.0, 0.0}, 0.3},
                                         cfg, safety, stub);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.detail.empty());
    CHECK(r.stats.attempts == cfg.max_parse_retries);
    CHECK(r.stats.successes == 0);
}

TEST_CASE("the shortest valid candidate across retries is kept") {
    const EnvironmentMap map = builtin_environment("env_a");
    const PlannerConfig cfg = PlannerConfig::for_environment("env_a");
    const SafetyConfig safety;
    const TargetObject* target = map.find_object("Room-number-plate-110");  // (12.7, 1.45)
    REQUIRE(target != nullptr);

    // both candidates are valid and clear of the estimate; the second is shorter
    const std::string longer =
        R"([{"x": 6.0, "y": -1.0}, {"x": 12.7, "y": 1.45}])";
    const std::string shorter = R"([{"x": 12.7, "y": 1.45}])";
    StubProvider stub({longer, shorter, "garbage"});
    const Circle estimate{{0.5, 1.4}, 0.05};  // off both candidate routes
    const ReplanResult r = replan_around(map, {0, 0, 0}, *target, estimate,
                                         cfg, safety, stub);
    REQUIRE(r.ok());
    CHECK(r.stats.attempts == 3);
    CHECK(r.stats.successes == 2);
    REQUIRE(r.path->waypoints.size() == 1);
    CHECK(r.path->waypoints[0].x == 12.7);
}

TEST_CASE("an estimate blocking every lane is reported as unreachable") {
    // corridor too narrow to pass a keep-out disc that spans the margin band
    EnvironmentMap map;
    map.safe_margin = 0.5;
    map.corridors.push_back({"c", 0.0, 12.0, -1.0, 1.0});
    map.start_pose = {0.6, 0.0, 0.0};
    const TargetObject target{"t", {11.0, 0.0}, "c"};
    const Circle estimate{{6.0, 0.0}, 0.4};  // keep-out 0.9 > half-band 0.5
    OracleProvider oracle;
    const ReplanResult r = replan_around(map, map.start_pose, target, estimate,
                                         PlannerConfig{}, SafetyConfig{}, oracle);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.detail.empty());
}
