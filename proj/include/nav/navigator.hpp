#pragma once

// The navigation loop: Plan -> Transform -> Track -> Assess -> (Replan |
// Complete), driving a unicycle kinematic simulator with a synthesized LIDAR.
// Tick order is fixed as sense -> decide -> act -> integrate, so an obstacle
// visible at tick k produces a zero command at tick k.

#include <cassert>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nav/control.hpp"
#include "nav/geometry.hpp"
#include "nav/metrics.hpp"
#include "nav/planning.hpp"
#include "nav/replan.hpp"
#include "nav/safety.hpp"
#include "nav/state.hpp"
#include "nav/world.hpp"

namespace nav {

struct SimConfig {
    double dt = 0.05;                    // s
    int lidar_beams = 360;
    double lidar_max_range = 3.5;        // m
    double max_sim_time_s = 300.0;       // per command
    // A slow-stop halt that persists this long is treated as an emergency so
    // a static blocker ahead eventually triggers replanning.
    double slow_stop_escalation_s = 1.0;
    double wall_penetration_tol = 1e-6;  // m
};

struct RobotState {
    Pose pose;        // map frame ground truth
    Pose odom_pose;   // pose expressed in the active odometry frame
    VelocityCommand commanded;
    double sim_time = 0.0;
};

// Unicycle integration: x += V cos(theta) dt, y += V sin(theta) dt,
// theta += w dt wrapped to [-pi, pi); sim_time += dt.
inline RobotState step_kinematics(RobotState state, VelocityCommand cmd, double dt) {
    assert(dt > 0.0);
    auto advance = [&](Pose& p) {
        p.x += cmd.linear * std::cos(p.theta) * dt;
        p.y += cmd.linear * std::sin(p.theta) * dt;
        p.theta = wrap_angle(p.theta + cmd.angular * dt);
    };
    advance(state.pose);
    advance(state.odom_pose);
    state.commanded = cmd;
    state.sim_time += dt;
    return state;
}

struct NavConfigs {
    PlannerConfig planner;
    ControllerConfig controller;
    SafetyConfig safety;
    SimConfig sim;

    static NavConfigs for_environment(std::string_view env_name) {
        NavConfigs cfg;
        cfg.planner = PlannerConfig::for_environment(env_name);
        return cfg;
    }
};

struct CommandOutcome {
    Command command;
    NavState terminal;
    RunMetrics metrics;
    Trajectory trajectory;
    EventLog events;
    std::vector<NavState> state_trace;
    std::vector<Path> paths;  // initial plan plus every accepted replan
};

// Called at the start of every tick with the time since the command started;
// may mutate dynamic obstacles (the only legal mutation between sim steps).
using TickHook = std::function<void(double time_in_command, EnvironmentMap&)>;

class Navigator {
  public:
    Navigator(EnvironmentMap map, NavConfigs cfg)
        : map_(std::move(map)), cfg_(std::move(cfg)), pose_(map_.start_pose) {}

    EnvironmentMap& map() { return map_; }
    const EnvironmentMap& map() const { return map_; }
    const Pose& pose() const { return pose_; }
    void set_pose(const Pose& pose) { pose_ = pose; }
    double sim_time() const { return sim_time_; }

    CommandOutcome run_command(const Command& command, WaypointProvider& provider,
                               const TickHook& hook = {}) {
        CommandOutcome out;
        out.command = command;
        state_ = NavState{};  // Idle
        out.state_trace.push_back(state_);
        const double t_start = sim_time_;

        transition(out, NavState{Phase::planning, -1, FailReason::none});
        out.events.add(sim_time_, "command_issued", 0.0, command.target_name);

        const TargetObject* target = map_.find_object(command.target_name);
        if (!target) {
            fail(out, FailReason::invalid_command,
                 "target '" + command.target_name + "' not found");
            record_sample(out, {0.0, 0.0});
            finish(out);
            return out;
        }

        record_sample(out, {0.0, 0.0});  // pose at command start, still planning

        const PlanResult planned = plan(command, pose_, map_, provider, cfg_.planner,
                                        [&](bool ok) {
                                            out.events.add(sim_time_, "plan_attempt",
                                                           ok ? 1.0 : 0.0);
                                        });
        out.events.add(sim_time_, "plan_done", planned.stats.planning_time_s,
                       planned.ok() ? "ok" : "failed");
        if (!planned.ok()) {
            fail(out,
                 planned.failure == PlanFailure::provider_unavailable
                     ? FailReason::provider_unavailable
                     : FailReason::planning_failed,
                 planned.detail);
            record_sample(out, {0.0, 0.0});
            finish(out);
            return out;
        }

        Path path = *planned.path;
        out.paths.push_back(path);
        const Pose odom_ref = pose_;  // Eq. 8 parameters for this command
        ReplanLedger ledger;
        double slow_timer = 0.0;
        bool moved = false;
        double est_range = 0.0;
        double est_bearing = 0.0;

        transition(out, NavState{Phase::navigating, 0, FailReason::none});

        while (true) {
            if (hook) hook(sim_time_ - t_start, map_);

            ScanData scan = cast_scan(map_, pose_, cfg_.sim.lidar_beams, cfg_.sim.lidar_max_range);
            scan.stamp = sim_time_;
            const AssessResult ar = assess(scan, cfg_.safety);
            const double frontal = std::isfinite(ar.min_range) ? ar.min_range
                                                               : cfg_.sim.lidar_max_range;
            out.events.add(sim_time_, "frontal_range", frontal);

            VelocityCommand cmd;
            if (state_.phase == Phase::navigating) {
                if (ar.level == Assessment::emergency) {
                    est_range = ar.min_range;
                    est_bearing = ar.bearing;
                    out.events.add(sim_time_, "emergency", ar.min_range, fmt_num(ar.bearing));
                    transition(out, NavState{Phase::emergency_stop, -1, FailReason::none});
                    slow_timer = 0.0;
                } else if (ar.level == Assessment::slow_stop) {
                    if (slow_timer == 0.0)
                        out.events.add(sim_time_, "slow_stop", ar.min_range);
                    slow_timer += cfg_.sim.dt;
                    if (slow_timer > cfg_.sim.slow_stop_escalation_s + 1e-9) {
                        est_range = ar.min_range;
                        est_bearing = ar.bearing;
                        out.events.add(sim_time_, "emergency", ar.min_range, fmt_num(ar.bearing));
                        transition(out, NavState{Phase::emergency_stop, -1, FailReason::none});
                        slow_timer = 0.0;
                    } else {
                        // Halted but still allowed to align with the waypoint;
                        // the cone sweeps off a lateral obstacle this way.
                        cmd = track_waypoint(out, path, odom_ref);
                        cmd.linear = 0.0;
                    }
                } else {
                    slow_timer = 0.0;
                    cmd = track_waypoint(out, path, odom_ref);
                }
            }

            if (state_.phase == Phase::emergency_stop) {
                cmd = {0.0, 0.0};  // Eq. 13
                if (ledger.attempts >= cfg_.safety.max_replans) {
                    fail(out, FailReason::replan_limit,
                         "replan attempt limit reached while still blocked");
                } else if (should_replan(ledger, sim_time_, cfg_.safety)) {
                    record_attempt(ledger, sim_time_, cfg_.safety);
                    out.events.add(sim_time_, "replan_attempt",
                                   static_cast<double>(ledger.attempts));
                    transition(out, NavState{Phase::replanning, -1, FailReason::none});
                    const double world_bearing = pose_.theta + est_bearing;
                    const Circle estimate{
                        pose_.position() +
                            est_range * Point{std::cos(world_bearing), std::sin(world_bearing)},
                        cfg_.safety.obstacle_estimate_radius};
                    const ReplanResult rr = replan_around(
                        map_, pose_, *target, estimate, cfg_.planner, cfg_.safety, provider,
                        [&](bool ok) {
                            out.events.add(sim_time_, "plan_attempt", ok ? 1.0 : 0.0);
                        });
                    out.events.add(sim_time_, "replan_done", 0.0, rr.ok() ? "ok" : "failed");
                    if (rr.ok()) {
                        path = *rr.path;
                        out.paths.push_back(path);
                        transition(out, NavState{Phase::navigating, 0, FailReason::none});
                    } else {
                        fail(out, FailReason::replan_failed, rr.detail);
                    }
                }
                // otherwise: hold position until the cooldown elapses
            }

            record_sample(out, cmd);
            if (terminal()) break;

            if (!cmd.is_zero() && !moved) {
                moved = true;
                out.events.add(sim_time_, "motion_start");
            }
            RobotState rs{pose_, pose_to_odom(pose_, odom_ref), cmd, sim_time_};
            rs = step_kinematics(rs, cmd, cfg_.sim.dt);
            pose_ = rs.pose;
            sim_time_ = rs.sim_time;

            if (!map_.inside_union(pose_.position(), cfg_.sim.wall_penetration_tol)) {
                out.events.add(sim_time_, "collision", 0.0, "wall penetration");
                fail(out, FailReason::collision, "robot left the corridor union");
                record_sample(out, {0.0, 0.0});
                break;
            }
            if (sim_time_ - t_start > cfg_.sim.max_sim_time_s + 1e-9) {
                fail(out, FailReason::timeout, "per-command sim time budget exhausted");
                record_sample(out, {0.0, 0.0});
                break;
            }
        }
        finish(out);
        return out;
    }

    // Runs commands back-to-back, each starting from the previous terminal
    // pose; aborts remaining commands on failure unless told to continue.
    using SequenceHook = std::function<void(std::size_t command_index, double time_in_command,
                                            EnvironmentMap&)>;

    std::vector<CommandOutcome> run_sequence(const std::vector<Command>& commands,
                                             WaypointProvider& provider,
                                             bool continue_on_failure = false,
                                             const SequenceHook& hook = {}) {
        std::vector<CommandOutcome> out;
        for (std::size_t i = 0; i < commands.size(); ++i) {
            TickHook tick;
            if (hook)
                tick = [&, i](double t, EnvironmentMap& m) { hook(i, t, m); };
            out.push_back(run_command(commands[i], provider, tick));
            if (out.back().terminal.phase != Phase::completed && !continue_on_failure) break;
        }
        return out;
    }

  private:
    bool terminal() const {
        return state_.phase == Phase::completed || state_.phase == Phase::failed;
    }

    void transition(CommandOutcome& out, NavState next) {
        assert(transition_legal(state_, next) && "illegal navigation state transition");
        state_ = next;
        out.state_trace.push_back(next);
    }

    void fail(CommandOutcome& out, FailReason reason, const std::string& detail) {
        transition(out, NavState{Phase::failed, -1, reason});
        out.events.add(sim_time_, "failed", 0.0, to_string(reason));
        if (!detail.empty()) out.events.add(sim_time_, "failure_detail", 0.0, detail);
    }

    void record_sample(CommandOutcome& out, VelocityCommand cmd) {
        out.trajectory.push_back({sim_time_, pose_, state_.phase, cmd});
    }

    // Transforms the current waypoint into the command's odometry frame
    // (Eq. 8) and runs the proportional controller there; advances the
    // waypoint index on reach, completing after the final one.
    VelocityCommand track_waypoint(CommandOutcome& out, const Path& path,
                                   const Pose& odom_ref) {
        while (true) {
            const std::size_t idx = static_cast<std::size_t>(state_.waypoint_index);
            const Point wp = path.waypoints[idx];
            const OdomPoint wp_od = map_to_odom(MapPoint{wp.x, wp.y}, odom_ref);
            const Pose robot_od = pose_to_odom(pose_, odom_ref);
            const ControlDecision decision =
                control_step(robot_od, wp_od.point(), cfg_.controller);
            if (!decision.reached) return decision.cmd;
            if (idx + 1 == path.waypoints.size()) {
                transition(out, NavState{Phase::completed, -1, FailReason::none});
                out.events.add(sim_time_, "completed");
                return {0.0, 0.0};
            }
            transition(out, NavState{Phase::navigating, state_.waypoint_index + 1,
                                     FailReason::none});
        }
    }

    void finish(CommandOutcome& out) {
        out.terminal = state_;
        out.metrics = metrics_from_log(out.events, out.trajectory, cfg_.safety.d_slowstop);
    }

    EnvironmentMap map_;
    NavConfigs cfg_;
    Pose pose_;
    double sim_time_ = 0.0;
    NavState state_;
};

}  // namespace nav
