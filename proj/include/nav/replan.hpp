#pragma once

// Replanning around an obstacle estimate: re-queries the provider with the
// obstacle position and a clearance requirement, validates candidates with
// the additional per-waypoint clearance bound, and keeps the shortest valid
// path seen across retries.

#include <optional>
#include <string>
#include <vector>

#include "nav/planning.hpp"
#include "nav/safety.hpp"
#include "nav/text.hpp"
#include "nav/world.hpp"

namespace nav {

struct ReplanResult {
    std::optional<Path> path;
    PlanningStats stats;
    std::string detail;

    bool ok() const { return path.has_value(); }
};

inline ReplanResult replan_around(const EnvironmentMap& map, const Pose& pose,
                                  const TargetObject& target,
                                  const Circle& obstacle_estimate,
                                  const PlannerConfig& cfg_planner,
                                  const SafetyConfig& cfg_safety,
                                  WaypointProvider& provider,
                                  const AttemptSink& on_attempt = {}) {
    ReplanResult out;
    const double clearance = cfg_safety.d_slowstop;

    PlanRequest request{&map, pose, target, cfg_planner, {obstacle_estimate}, clearance};
    provider.bind(request);

    const std::string obstacle_note =
        "An obstacle was detected at x=" + fmt_num(obstacle_estimate.center.x) +
        " m, y=" + fmt_num(obstacle_estimate.center.y) + " m with radius " +
        fmt_num(obstacle_estimate.radius) +
        " m. Every waypoint must keep a clearance greater than " + fmt_num(clearance) +
        " m from its surface.";

    auto clearance_of = [&](Point p) {
        return distance(p, obstacle_estimate.center) - obstacle_estimate.radius;
    };

    std::optional<Path> best;
    double best_length = 0.0;
    std::string feedback;
    for (int attempt = 1; attempt <= cfg_planner.max_parse_retries; ++attempt) {
        std::string note = obstacle_note;
        if (!feedback.empty())
            note += "\nRegenerate: the previous attempt was rejected.\n" + feedback;
        const PromptPair prompts = build_prompts(map, pose, target, cfg_planner, note);
        const GenerateResult gen = provider.generate(prompts, cfg_planner.provider_timeout_s);
        if (gen.error == GenerateResult::Error::unavailable) {
            out.detail = gen.message;
            break;
        }
        ++out.stats.attempts;
        if (!gen.ok()) {
            feedback = gen.message;
            if (on_attempt) on_attempt(false);
            if (provider.repeats_output()) break;
            continue;
        }
        const WaypointParse parsed = parse_waypoints(gen.text);
        if (!parsed.ok) {
            feedback = parsed.error;
            if (on_attempt) on_attempt(false);
            if (provider.repeats_output()) break;
            continue;
        }
        ValidationResult validated =
            validate_path(parsed.points, map, target, cfg_planner, provider.descriptor());
        if (!validated.ok()) {
            feedback = validated.report.summary();
            if (on_attempt) on_attempt(false);
            if (provider.repeats_output()) break;
            continue;
        }
        bool clear = true;
        for (const auto& w : validated.path->waypoints) {
            if (clearance_of(w) <= clearance) {
                feedback = "waypoint (" + fmt_num(w.x) + ", " + fmt_num(w.y) +
                           ") is within the required clearance of the obstacle";
                clear = false;
                break;
            }
        }
        if (!clear) {
            if (on_attempt) on_attempt(false);
            if (provider.repeats_output()) break;
            continue;
        }
        ++out.stats.successes;
        if (on_attempt) on_attempt(true);
        const double length = validated.path->polyline_length(pose.position());
        if (!best || length < best_length) {
            best = std::move(validated.path);
            best_length = length;
        }
        // Identical output on retry cannot improve the candidate set.
        if (provider.repeats_output()) break;
    }
    if (best) {
        out.path = std::move(best);
    } else if (out.detail.empty()) {
        out.detail = feedback.empty() ? "no valid replanning candidate" : feedback;
    }
    return out;
}

}  // namespace nav
