#include <catch2/catch_amalgamated.hpp>

#include "nav/metrics.hpp"
#include "nav/navigator.hpp"

using namespace nav;

namespace {

TrajectorySample at(double t, double x, double y) {
    return {t, {x, y, 0.0}, Phase::navigating, {0.0, 0.0}};
}

}  // namespace

TEST_CASE("path_length sums consecutive pose distances") {
    CHECK(path_length({at(0, 0, 0)}) == 0.0);
    CHECK(path_length({at(0, 0, 0), at(1, 3, 4), at(2, 3, 5)}) == Catch::Approx(6.0));

    // 0.4 m/s straight drive for 10 s at dt = 0.05
    Trajectory traj;
    RobotState rs;
    traj.push_back(at(0, 0, 0));
    for (int i = 0; i < 200; ++i) {
        rs = step_kinematics(rs, {0.4, 0.0}, 0.05);
        traj.push_back(at(rs.sim_time, rs.pose.x, rs.pose.y));
    }
    CHECK(path_length(traj) == Catch::Approx(4.0).margin(1e-9));
}

TEST_CASE("collision events are debounced encounters") {
    EventLog log;
    SECTION("no sub-threshold readings") {
        for (int i = 0; i < 10; ++i) log.add(i * 0.05, "frontal_range", 2.0);
        CHECK(collision_events(log, 0.5) == 0);
        CHECK(raw_collision_ticks(log, 0.5) == 0);
    }
    SECTION("one encounter spanning forty ticks counts once") {
        for (int i = 0; i < 40; ++i) log.add(i * 0.05, "frontal_range", 0.3);
        CHECK(collision_events(log, 0.5) == 1);
        CHECK(raw_collision_ticks(log, 0.5) == 40);
    }
    SECTION("recovery splits encounters") {
        for (int i = 0; i < 5; ++i) log.add(i * 0.05, "frontal_range", 0.3);
        log.add(0.3, "frontal_range", 1.2);
        for (int i = 0; i < 5; ++i) log.add(0.35 + i * 0.05, "frontal_range", 0.4);
        CHECK(collision_events(log, 0.5) == 2);
        CHECK(raw_collision_ticks(log, 0.5) == 10);
    }
}

TEST_CASE("wgsr percentages") {
    CHECK(wgsr(1, 1) == 100.0);
    CHECK(fmt_fixed(wgsr(1, 3), 2) == "33.33");
    CHECK(wgsr(1, 2) == 50.0);
    RunMetrics m;
    m.psi = 0;
    CHECK_FALSE(m.wgsr_pct().has_value());
}

TEST_CASE("metrics_from_log reconstructs every field from a hand-built log") {
    EventLog log;
    log.add(0.0, "command_issued", 0.0, "Window");
    log.add(0.0, "plan_attempt", 0.0);
    log.add(0.0, "plan_attempt", 0.0);
    log.add(0.0, "plan_attempt", 1.0);
    log.add(0.0, "plan_done", 2.5, "ok");
    log.add(1.0, "motion_start");
    for (int i = 0; i < 40; ++i) log.add(2.0 + i * 0.05, "frontal_range", 0.3);
    log.add(4.0, "replan_attempt", 1.0);
    log.add(11.0, "completed");

    Trajectory traj{at(0, 0, 0), at(5, 3, 4), at(11, 3, 5)};
    const RunMetrics m = metrics_from_log(log, traj, 0.5);

    CHECK(m.planning_time_s == 2.5);
    CHECK(m.execution_time_s == Catch::Approx(10.0));
    CHECK(m.phi == 1);
    CHECK(m.psi == 3);
    CHECK(fmt_fixed(*m.wgsr_pct(), 2) == "33.33");
    CHECK(m.path_length_m == Catch::Approx(6.0));
    CHECK(m.collision_events == 1);
    CHECK(m.raw_collision_ticks == 40);
    CHECK(m.replan_attempts == 1);
    REQUIRE(m.replanning_rate.has_value());
    CHECK(*m.replanning_rate == Catch::Approx(0.1));
    CHECK(m.outcome.phase == Phase::completed);
}

TEST_CASE("undefined rates are flagged, not faked") {
    EventLog log;
    log.add(0.0, "command_issued");
    log.add(0.0, "failed", 0.0, "PlanningFailed");
    const RunMetrics m = metrics_from_log(log, {at(0, 0, 0)}, 0.5);
    CHECK(m.execution_time_s == 0.0);
    CHECK_FALSE(m.replanning_rate.has_value());
    CHECK(m.outcome.phase == Phase::failed);
    CHECK(m.outcome.reason == FailReason::planning_failed);
}

TEST_CASE("aggregate means with failure annotations") {
    RunMetrics ok;
    ok.planning_time_s = 2.0;
    ok.execution_time_s = 30.0;
    ok.path_length_m = 10.0;
    ok.phi = ok.psi = 1;
    ok.outcome = {Phase::completed, -1, FailReason::none};
    RunMetrics ok2 = ok;
    ok2.execution_time_s = 50.0;
    ok2.path_length_m = 20.0;
    RunMetrics bad;
    bad.psi = 3;
    bad.outcome = {Phase::failed, -1, FailReason::planning_failed};

    SECTION("all-success rows give plain means") {
        const auto s = aggregate({{"a", "t", "oracle", ok}, {"b", "t", "oracle", ok2}});
        CHECK(s.completed == 2);
        CHECK(s.mean_execution_time_s == Catch::Approx(40.0));
        CHECK(aggregate_text(s).find("*") == std::string::npos);
    }
    SECTION("failures are annotated with the (k*) convention") {
        const auto s = aggregate({{"a", "t", "oracle", ok},
                                  {"b", "t", "oracle", bad},
                                  {"c", "t", "oracle", bad}});
        CHECK(s.completed == 1);
        CHECK(s.failures == 2);
        const std::string text = aggregate_text(s);
        CHECK(text.find("30.00 (2*)") != std::string::npos);
        CHECK(aggregate_csv(s).find("(2*)") != std::string::npos);
    }
    SECTION("a single row aggregates to itself") {
        const auto s = aggregate({{"a", "t", "oracle", ok}});
        CHECK(s.mean_path_length_m == Catch::Approx(10.0));
        CHECK(s.commands == 1);
    }
}

TEST_CASE("persisted logs round-trip byte-identically") {
    EventLog log;
    log.add(0.0, "command_issued", 0.0, "Window");
    log.add(0.05, "frontal_range", 3.2345678901234567);
    log.add(0.1, "failed", 0.0, "Timeout");
    log.add(0.1, "failure_detail", 0.0, "a note, with a comma");
    Trajectory traj{{0.0, {0.123456789012345, -2.5, 0.7853981633974483},
                     Phase::navigating, {0.4, -1.25}},
                    {0.05, {1.0 / 3.0, 2.0 / 3.0, -kPi}, Phase::completed, {0.0, 0.0}}};

    const std::string ecsv = events_csv(log);
    const std::string tcsv = trajectory_csv(traj);
    const EventLog log2 = parse_events_csv(ecsv);
    const Trajectory traj2 = parse_trajectory_csv(tcsv);
    CHECK(events_csv(log2) == ecsv);
    CHECK(trajectory_csv(traj2) == tcsv);

    // recomputing metrics from the parsed logs is exact
    const RunMetrics a = metrics_from_log(log, traj, 0.5);
    const RunMetrics b = metrics_from_log(log2, traj2, 0.5);
    const std::vector<CommandRecord> ra{{"cmd", "t", "oracle", a}};
    const std::vector<CommandRecord> rb{{"cmd", "t", "oracle", b}};
    CHECK(metrics_csv(ra) == metrics_csv(rb));
}
