#pragma once

// The six evaluation metrics, computed from run event logs, plus CSV / text
// report rendering. Every metric is recomputable from the persisted logs
// alone; the navigator itself derives its RunMetrics through metrics_from_log
// so there is no hidden state.

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nav/control.hpp"
#include "nav/geometry.hpp"
#include "nav/state.hpp"
#include "nav/text.hpp"

namespace nav {

struct TrajectorySample {
    double t = 0.0;  // sim seconds
    Pose pose;
    Phase phase = Phase::idle;
    VelocityCommand cmd;
};

using Trajectory = std::vector<TrajectorySample>;

// Discrete run events. Kinds:
//   command_issued (note=target), plan_attempt (value=1 success / 0 failure),
//   plan_done (value=planning seconds, note=ok|failed), motion_start,
//   frontal_range (value=min frontal range, every tick), slow_stop (value=range),
//   emergency (value=range, note=bearing), replan_attempt (value=mu),
//   replan_done (note=ok|failed), completed, failed (note=reason).
struct Event {
    double t = 0.0;
    std::string kind;
    double value = 0.0;
    std::string note;
};

struct EventLog {
    std::vector<Event> events;

    void add(double t, std::string kind, double value = 0.0, std::string note = "") {
        events.push_back({t, std::move(kind), value, std::move(note)});
    }

    const Event* first(std::string_view kind) const {
        for (const auto& e : events)
            if (e.kind == kind) return &e;
        return nullptr;
    }
};

// Eq. 20: sum of Euclidean distances between consecutive recorded poses.
inline double path_length(const Trajectory& trajectory) {
    assert(!trajectory.empty());
    double total = 0.0;
    for (std::size_t i = 1; i < trajectory.size(); ++i)
        total += distance(trajectory[i - 1].pose.position(), trajectory[i].pose.position());
    return total;
}

// Debounced obstacle encounters: consecutive sub-threshold frontal ranges
// count once until the range recovers above d_critical.
inline int collision_events(const EventLog& log, double d_critical) {
    int count = 0;
    bool below = false;
    for (const auto& e : log.events) {
        if (e.kind != "frontal_range") continue;
        if (e.value < d_critical) {
            if (!below) ++count;
            below = true;
        } else {
            below = false;
        }
    }
    return count;
}

// Raw Eq. 21 indicator sum: one per sub-threshold measurement.
inline int raw_collision_ticks(const EventLog& log, double d_critical) {
    int count = 0;
    for (const auto& e : log.events)
        if (e.kind == "frontal_range" && e.value < d_critical) ++count;
    return count;
}

// Eq. 19. Requires psi >= 1.
inline double wgsr(int phi, int psi) {
    assert(psi >= 1);
    return 100.0 * static_cast<double>(phi) / static_cast<double>(psi);
}

struct RunMetrics {
    double planning_time_s = 0.0;
    double execution_time_s = 0.0;
    int phi = 0;  // successful generation attempts
    int psi = 0;  // total generation attempts
    double path_length_m = 0.0;
    int collision_events = 0;
    int raw_collision_ticks = 0;
    int replan_attempts = 0;
    std::optional<double> replanning_rate;  // mu / execution time; empty when undefined
    NavState outcome;

    std::optional<double> wgsr_pct() const {
        if (psi < 1) return std::nullopt;
        return wgsr(phi, psi);
    }
};

inline RunMetrics metrics_from_log(const EventLog& log, const Trajectory& trajectory,
                                   double d_critical) {
    RunMetrics m;
    if (const Event* plan = log.first("plan_done")) m.planning_time_s = plan->value;
    for (const auto& e : log.events) {
        if (e.kind == "plan_attempt") {
            ++m.psi;
            if (e.value >= 1.0) ++m.phi;
        } else if (e.kind == "replan_attempt") {
            ++m.replan_attempts;
        }
    }
    const Event* motion = log.first("motion_start");
    const Event* completed = log.first("completed");
    const Event* failed = log.first("failed");
    const Event* terminal = completed ? completed : failed;
    if (motion && terminal) m.execution_time_s = terminal->t - motion->t;
    if (!trajectory.empty()) m.path_length_m = path_length(trajectory);
    m.collision_events = collision_events(log, d_critical);
    m.raw_collision_ticks = raw_collision_ticks(log, d_critical);
    if (m.execution_time_s > 0.0)
        m.replanning_rate = m.replan_attempts / m.execution_time_s;
    if (completed) {
        m.outcome = NavState{Phase::completed, -1, FailReason::none};
    } else if (failed) {
        FailReason reason = FailReason::none;
        for (auto r : {FailReason::invalid_command, FailReason::planning_failed,
                       FailReason::provider_unavailable, FailReason::replan_failed,
                       FailReason::replan_limit, FailReason::collision, FailReason::timeout}) {
            if (failed->note == to_string(r)) reason = r;
        }
        m.outcome = NavState{Phase::failed, -1, reason};
    }
    return m;
}

// ---------------------------------------------------------------------------
// Per-command records and reports

struct CommandRecord {
    std::string raw_text;
    std::string target;
    std::string provider;
    RunMetrics metrics;
};

inline std::string metrics_csv(const std::vector<CommandRecord>& rows) {
    std::string out =
        "command,raw_text,target,provider,outcome,planning_time_s,execution_time_s,"
        "wgsr_phi,wgsr_psi,wgsr_pct,path_length_m,collision_events,raw_collision_ticks,"
        "replan_attempts,replanning_rate_per_s\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& m = r.metrics;
        std::string outcome = to_string(m.outcome.phase);
        if (m.outcome.phase == Phase::failed)
            outcome += std::string("(") + to_string(m.outcome.reason) + ")";
        out += std::to_string(i + 1) + "," + csv_escape(r.raw_text) + "," +
               csv_escape(r.target) + "," + r.provider + "," + outcome + "," +
               fmt_fixed(m.planning_time_s, 3) + "," + fmt_fixed(m.execution_time_s, 2) + "," +
               std::to_string(m.phi) + "," + std::to_string(m.psi) + "," +
               (m.wgsr_pct() ? fmt_fixed(*m.wgsr_pct(), 2) : std::string()) + "," +
               fmt_fixed(m.path_length_m, 3) + "," + std::to_string(m.collision_events) + "," +
               std::to_string(m.raw_collision_ticks) + "," + std::to_string(m.replan_attempts) +
               "," + (m.replanning_rate ? fmt_fixed(*m.replanning_rate, 4) : std::string()) +
               "\n";
    }
    return out;
}

struct AggregateSummary {
    int commands = 0;
    int completed = 0;
    int failures = 0;
    // Means over completed runs only (Table 3 convention); failures are
    // reported as a "(k*)" annotation.
    double mean_planning_time_s = 0.0;
    double mean_execution_time_s = 0.0;
    double mean_path_length_m = 0.0;
    double mean_wgsr_pct = 0.0;
    double total_replans = 0.0;
    double total_collision_events = 0.0;
};

inline AggregateSummary aggregate(const std::vector<CommandRecord>& rows) {
    assert(!rows.empty());
    AggregateSummary s;
    s.commands = static_cast<int>(rows.size());
    for (const auto& r : rows) {
        const auto& m = r.metrics;
        if (m.outcome.phase == Phase::completed) {
            ++s.completed;
            s.mean_planning_time_s += m.planning_time_s;
            s.mean_execution_time_s += m.execution_time_s;
            s.mean_path_length_m += m.path_length_m;
            if (m.wgsr_pct()) s.mean_wgsr_pct += *m.wgsr_pct();
        } else {
            ++s.failures;
        }
        s.total_replans += m.replan_attempts;
        s.total_collision_events += m.collision_events;
    }
    if (s.completed > 0) {
        s.mean_planning_time_s /= s.completed;
        s.mean_execution_time_s /= s.completed;
        s.mean_path_length_m /= s.completed;
        s.mean_wgsr_pct /= s.completed;
    }
    return s;
}

namespace detail {

inline std::string annotate(const std::string& value, int failures) {
    if (failures == 0) return value;
    return value + " (" + std::to_string(failures) + "*)";
}

}  // namespace detail

inline std::string aggregate_csv(const AggregateSummary& s) {
    std::string out = "metric,value\n";
    out += "commands," + std::to_string(s.commands) + "\n";
    out += "completed," + std::to_string(s.completed) + "\n";
    out += "failed," + std::to_string(s.failures) + "\n";
    out += "mean_planning_time_s," + detail::annotate(fmt_fixed(s.mean_planning_time_s, 3), s.failures) + "\n";
    out += "mean_execution_time_s," + detail::annotate(fmt_fixed(s.mean_execution_time_s, 2), s.failures) + "\n";
    out += "mean_path_length_m," + detail::annotate(fmt_fixed(s.mean_path_length_m, 2), s.failures) + "\n";
    out += "mean_wgsr_pct," + detail::annotate(fmt_fixed(s.mean_wgsr_pct, 2), s.failures) + "\n";
    out += "total_replans," + fmt_fixed(s.total_replans, 0) + "\n";
    out += "total_collision_events," + fmt_fixed(s.total_collision_events, 0) + "\n";
    return out;
}

inline std::string aggregate_text(const AggregateSummary& s) {
    auto line = [](const std::string& label, const std::string& value) {
        std::string out = label;
        if (out.size() < 34) out.resize(34, ' ');
        return out + value + "\n";
    };
    std::string out;
    out += line("Commands", std::to_string(s.commands));
    out += line("Completed", std::to_string(s.completed));
    out += line("Failed", std::to_string(s.failures));
    out += line("Path Planning Time (s)", detail::annotate(fmt_fixed(s.mean_planning_time_s, 3), s.failures));
    out += line("Execution Time (s)", detail::annotate(fmt_fixed(s.mean_execution_time_s, 2), s.failures));
    out += line("Path Length (m)", detail::annotate(fmt_fixed(s.mean_path_length_m, 2), s.failures));
    out += line("WP-Generation Success Rate (%)", detail::annotate(fmt_fixed(s.mean_wgsr_pct, 2), s.failures));
    out += line("Replanning Count", fmt_fixed(s.total_replans, 0));
    out += line("Collision Detection Events", fmt_fixed(s.total_collision_events, 0));
    return out;
}

// ---------------------------------------------------------------------------
// Log persistence (exact round-trip floats)

inline std::string trajectory_csv(const Trajectory& trajectory) {
    std::string out = "sim_time,x,y,theta,state,v_linear,v_angular\n";
    for (const auto& s : trajectory) {
        out += fmt_exact(s.t) + "," + fmt_exact(s.pose.x) + "," + fmt_exact(s.pose.y) + "," +
               fmt_exact(s.pose.theta) + "," + to_string(s.phase) + "," +
               fmt_exact(s.cmd.linear) + "," + fmt_exact(s.cmd.angular) + "\n";
    }
    return out;
}

inline std::string events_csv(const EventLog& log) {
    std::string out = "sim_time,kind,value,note\n";
    for (const auto& e : log.events) {
        out += fmt_exact(e.t) + "," + e.kind + "," + fmt_exact(e.value) + "," +
               csv_escape(e.note) + "\n";
    }
    return out;
}

inline Trajectory parse_trajectory_csv(const std::string& text) {
    Trajectory out;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7) continue;
        TrajectorySample s;
        s.t = std::strtod(f[0].c_str(), nullptr);
        s.pose.x = std::strtod(f[1].c_str(), nullptr);
        s.pose.y = std::strtod(f[2].c_str(), nullptr);
        s.pose.theta = std::strtod(f[3].c_str(), nullptr);
        for (auto p : {Phase::idle, Phase::planning, Phase::navigating, Phase::emergency_stop,
                       Phase::replanning, Phase::completed, Phase::failed}) {
            if (f[4] == to_string(p)) s.phase = p;
        }
        s.cmd.linear = std::strtod(f[5].c_str(), nullptr);
        s.cmd.angular = std::strtod(f[6].c_str(), nullptr);
        out.push_back(s);
    }
    return out;
}

inline EventLog parse_events_csv(const std::string& text) {
    EventLog out;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) continue;
        out.add(std::strtod(f[0].c_str(), nullptr), f[1],
                std::strtod(f[2].c_str(), nullptr), f[3]);
    }
    return out;
}

}  // namespace nav
