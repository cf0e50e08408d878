#pragma once

// Navigation state machine values and the legal transition set.

#include <string>

namespace nav {

enum class Phase {
    idle,
    planning,
    navigating,
    emergency_stop,
    replanning,
    completed,
    failed,
};

enum class FailReason {
    none,
    invalid_command,
    planning_failed,
    provider_unavailable,
    replan_failed,
    replan_limit,
    collision,
    timeout,
};

struct NavState {
    Phase phase = Phase::idle;
    int waypoint_index = -1;  // valid while navigating
    FailReason reason = FailReason::none;
};

inline const char* to_string(Phase p) {
    switch (p) {
        case Phase::idle: return "Idle";
        case Phase::planning: return "Planning";
        case Phase::navigating: return "Navigating";
        case Phase::emergency_stop: return "EmergencyStop";
        case Phase::replanning: return "Replanning";
        case Phase::completed: return "Completed";
        case Phase::failed: return "Failed";
    }
    return "?";
}

inline const char* to_string(FailReason r) {
    switch (r) {
        case FailReason::none: return "none";
        case FailReason::invalid_command: return "InvalidCommand";
        case FailReason::planning_failed: return "PlanningFailed";
        case FailReason::provider_unavailable: return "ProviderUnavailable";
        case FailReason::replan_failed: return "ReplanFailed";
        case FailReason::replan_limit: return "ReplanLimitReached";
        case FailReason::collision: return "Collision";
        case FailReason::timeout: return "Timeout";
    }
    return "?";
}

// Legal transitions per command:
//   Idle -> Planning; Planning -> {Navigating, Failed};
//   Navigating -> {Navigating(+1), EmergencyStop, Completed};
//   EmergencyStop -> {Replanning, Failed};
//   Replanning -> {Navigating, Failed};
//   Completed / Failed terminal.
inline bool transition_legal(const NavState& from, const NavState& to) {
    switch (from.phase) {
        case Phase::idle:
            return to.phase == Phase::planning;
        case Phase::planning:
            return to.phase == Phase::navigating || to.phase == Phase::failed;
        case Phase::navigating:
            if (to.phase == Phase::navigating)
                return to.waypoint_index == from.waypoint_index + 1;
            return to.phase == Phase::emergency_stop || to.phase == Phase::completed ||
                   (to.phase == Phase::failed &&
                    (to.reason == FailReason::collision || to.reason == FailReason::timeout));
        case Phase::emergency_stop:
            return to.phase == Phase::replanning || to.phase == Phase::failed;
        case Phase::replanning:
            return to.phase == Phase::navigating || to.phase == Phase::failed;
        case Phase::completed:
        case Phase::failed:
            return false;
    }
    return false;
}

}  // namespace nav
