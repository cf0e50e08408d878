#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nav/environments.hpp"
#include "nav/navigator.hpp"
#include "nav/providers.hpp"

using namespace nav;

namespace {

void check_trace_legal(const std::vector<NavState>& trace) {
    REQUIRE(!trace.empty());
    CHECK(trace.front().phase == Phase::idle);
    for (std::size_t i = 1; i < trace.size(); ++i)
        CHECK(transition_legal(trace[i - 1], trace[i]));
}

void check_zero_velocity_in_emergency(const Trajectory& trajectory) {
    for (const auto& s : trajectory) {
        if (s.phase == Phase::emergency_stop) {
            CHECK(s.cmd.linear == 0.0);
            CHECK(s.cmd.angular == 0.0);
        }
    }
}

// No sample may violate the safe margin by more than the reach threshold.
void check_margin_discipline(const EnvironmentMap& map, const Trajectory& trajectory,
                             double slack) {
    for (const auto& s : trajectory) {
        bool ok = false;
        for (const auto& c : map.corridors)
            if (c.margin_contains(s.pose.position(), map.safe_margin - slack)) ok = true;
        CHECK(ok);
    }
}

Command make_command(const EnvironmentMap& map, const std::string& raw) {
    const CommandParse parsed = parse_command(raw, map);
    REQUIRE(parsed.ok());
    return *parsed.command;
}

}  // namespace

TEST_CASE("step_kinematics integrates the unicycle model") {
    RobotState rs;
    SECTION("zero command only advances time") {
        const RobotState next = step_kinematics(rs, {0.0, 0.0}, 0.05);
        CHECK(next.pose.x == 0.0);
        CHECK(next.pose.y == 0.0);
        CHECK(next.sim_time == 0.05);
    }
    SECTION("straight-line integration") {
        const RobotState next = step_kinematics(rs, {0.4, 0.0}, 1.0);
        CHECK(next.pose.x == Catch::Approx(0.4));
        CHECK(next.pose.y == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("pure rotation wraps the heading") {
        const RobotState next = step_kinematics(rs, {0.0, 2.0}, kPi / 2);
        CHECK(std::abs(next.pose.theta) == Catch::Approx(kPi));
    }
}

TEST_CASE("oracle run to the window completes cleanly") {
    const EnvironmentMap map = builtin_environment("env_a");
    Navigator navigator(map, NavConfigs::for_environment("env_a"));
    OracleProvider oracle;
    const CommandOutcome out =
        navigator.run_command(make_command(map, "go to the window"), oracle);

    CHECK(out.terminal.phase == Phase::completed);
    const Point window = map.find_object("Window")->position;
    CHECK(distance(out.trajectory.back().pose.position(), window) <= 0.1 + 1e-9);
    CHECK(out.metrics.collision_events == 0);
    CHECK(out.metrics.replan_attempts == 0);
    CHECK(out.metrics.phi == 1);
    CHECK(out.metrics.psi == 1);
    CHECK(out.metrics.execution_time_s > 0.0);
    check_trace_legal(out.state_trace);
    check_zero_velocity_in_emergency(out.trajectory);
    check_margin_discipline(map, out.trajectory,
                            NavConfigs{}.controller.distance_threshold + 1e-9);

    // path-length sanity against the planned polyline
    const double executed = path_length(out.trajectory);
    const Point start = map.start_pose.position();
    const double polyline = out.paths.front().polyline_length(start);
    CHECK(executed >= distance(start, out.trajectory.back().pose.position()) - 1e-9);
    CHECK(executed <= 1.25 * polyline);
}

TEST_CASE("a provider that only emits garbage fails without moving") {
    const EnvironmentMap map = builtin_environment("env_a");
    Navigator navigator(map, NavConfigs::for_environment("env_a"));
    StubProvider stub({"I refuse"});
    const CommandOutcome out =
        navigator.run_command(make_command(map, "go to the window"), stub);
    CHECK(out.terminal.phase == Phase::failed);
    CHECK(out.terminal.reason == FailReason::planning_failed);
    CHECK(out.metrics.psi == 3);
    CHECK(out.metrics.phi == 0);
    CHECK(path_length(out.trajectory) == 0.0);
    check_trace_legal(out.state_trace);
}

TEST_CASE("an unknown target fails in the planning phase") {
    const EnvironmentMap map = builtin_environment("env_a");
    Navigator navigator(map, NavConfigs::for_environment("env_a"));
    OracleProvider oracle;
    const CommandOutcome out =
        navigator.run_command({"go to nowhere", "", 0.0}, oracle);
    CHECK(out.terminal.phase == Phase::failed);
    CHECK(out.terminal.reason == FailReason::invalid_command);
    check_trace_legal(out.state_trace);
}

TEST_CASE("an obstacle dropped ahead mid-run triggers stop, replan, completion") {
    const EnvironmentMap map = builtin_environment("env_a");
    Navigator navigator(map, NavConfigs::for_environment("env_a"));
    OracleProvider oracle;

    bool injected = false;
    const TickHook hook = [&](double t, EnvironmentMap& m) {
        if (injected || t < 5.0) return;
        injected = true;
        const Pose& p = navigator.pose();
        m.dynamic_obstacles.push_back(
            {{p.x + 2.0 * std::cos(p.theta), p.y + 2.0 * std::sin(p.theta)}, 0.3});
    };
    const CommandOutcome out =
        navigator.run_command(make_command(map, "go to the window"), oracle, hook);

    CHECK(out.terminal.phase == Phase::completed);
    CHECK(out.metrics.replan_attempts >= 1);
    CHECK(out.paths.size() >= 2);

    // the trace passes through EmergencyStop -> Replanning -> Navigating
    std::size_t i_emergency = 0, i_replanning = 0, i_navigating = 0, i_completed = 0;
    for (std::size_t i = 0; i < out.state_trace.size(); ++i) {
        const Phase p = out.state_trace[i].phase;
        if (p == Phase::emergency_stop && i_emergency == 0) i_emergency = i;
        if (p == Phase::replanning && i_emergency > 0 && i_replanning == 0) i_replanning = i;
        if (p == Phase::navigating && i_replanning > 0 && i_navigating == 0) i_navigating = i;
        if (p == Phase::completed) i_completed = i;
    }
    CHECK(i_emergency > 0);
    CHECK(i_replanning > i_emergency);
    CHECK(i_navigating > i_replanning);
    CHECK(i_completed > i_navigating);
    check_trace_legal(out.state_trace);
    check_zero_velocity_in_emergency(out.trajectory);

    // the applied command is exactly zero at the detection tick
    const Event* emergency = out.events.first("emergency");
    REQUIRE(emergency != nullptr);
    for (const auto& s : out.trajectory) {
        if (s.t == emergency->t) {
            CHECK(s.cmd.linear == 0.0);
            CHECK(s.cmd.angular == 0.0);
        }
    }
}

TEST_CASE("run_sequence chains terminal poses and honours failure policy") {
    const EnvironmentMap map = builtin_environment("env_a");
    OracleProvider oracle;

    SECTION("the five table-one commands all complete back to back") {
        Navigator navigator(map, NavConfigs::for_environment("env_a"));
        std::vector<Command> commands;
        for (const std::string raw :
             {"go to the window", "go to room number 105", "go to room number 102",
              "go to room number 108", "go to room number 103"}) {
            commands.push_back(make_command(map, raw));
        }
        const auto results = navigator.run_sequence(commands, oracle);
        REQUIRE(results.size() == 5);
        for (std::size_t k = 0; k < results.size(); ++k) {
            CHECK(results[k].terminal.phase == Phase::completed);
            check_trace_legal(results[k].state_trace);
            if (k > 0) {
                const Pose& end_prev = results[k - 1].trajectory.back().pose;
                const Pose& start_next = results[k].trajectory.front().pose;
                CHECK(end_prev.x == start_next.x);
                CHECK(end_prev.y == start_next.y);
            }
        }
        // sim clock is continuous across the sequence
        CHECK(results[1].trajectory.front().t >= results[0].trajectory.back().t);
    }
    SECTION("empty sequence gives empty results") {
        Navigator navigator(map, NavConfigs::for_environment("env_a"));
        CHECK(navigator.run_sequence({}, oracle).empty());
    }
    SECTION("failure aborts the remainder unless asked to continue") {
        StubProvider stub({"junk"});
        Navigator navigator(map, NavConfigs::for_environment("env_a"));
        std::vector<Command> commands{make_command(map, "go to the window"),
                                      make_command(map, "go to room number 105")};
        CHECK(navigator.run_sequence(commands, stub).size() == 1);
        Navigator navigator2(map, NavConfigs::for_environment("env_a"));
        CHECK(navigator2.run_sequence(commands, stub, true).size() == 2);
    }
}

TEST_CASE("env_c starts at (0,-3) and crosses junctions to corridor two") {
    const EnvironmentMap map = builtin_environment("env_c");
    Navigator navigator(map, NavConfigs::for_environment("env_c"));
    CHECK(navigator.pose().x == 0.0);
    CHECK(navigator.pose().y == -3.0);

    OracleProvider oracle;
    const CommandOutcome out =
        navigator.run_command(make_command(map, "go to room number 206"), oracle);
    CHECK(out.terminal.phase == Phase::completed);
    check_margin_discipline(map, out.trajectory,
                            NavConfigs{}.controller.distance_threshold + 1e-9);
}

TEST_CASE("identical runs are bit-identical") {
    const EnvironmentMap map = builtin_environment("env_b");
    OracleProvider oracle;
    Navigator nav1(map, NavConfigs::for_environment("env_b"));
    Navigator nav2(map, NavConfigs::for_environment("env_b"));
    const Command command = make_command(map, "go to window 02");
    const CommandOutcome a = nav1.run_command(command, oracle);
    const CommandOutcome b = nav2.run_command(command, oracle);
    CHECK(trajectory_csv(a.trajectory) == trajectory_csv(b.trajectory));
    CHECK(events_csv(a.events) == events_csv(b.events));
}
