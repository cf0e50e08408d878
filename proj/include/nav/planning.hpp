#pragma once

// Translates a natural-language command into a validated Path: command
// parsing, prompt construction, provider invocation, waypoint JSON parsing,
// margin/tolerance validation, and bounded retry with failure feedback.

#include <cassert>
#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nav/control.hpp"
#include "nav/geometry.hpp"
#include "nav/text.hpp"
#include "nav/world.hpp"

namespace nav {

// ---------------------------------------------------------------------------
// Command parsing

struct Command {
    std::string raw_text;
    std::string target_name;
    double issued_at = 0.0;  // sim seconds
};

enum class CommandError { none, unknown_target, ambiguous_target };

struct CommandParse {
    std::optional<Command> command;
    CommandError error = CommandError::none;
    std::vector<std::string> candidates;

    bool ok() const { return command.has_value(); }
};

// Resolves the target object named by a free-text command. Room-number
// phrases ("room number 101", "room 101", "RNP 101") resolve to the matching
// plate; other objects resolve case-insensitively by normalized name, either
// as a full phrase in the text or by their leading word ("window"). Multiple
// matches fail rather than guess.
inline CommandParse parse_command(const std::string& raw, const EnvironmentMap& map) {
    CommandParse out;
    if (raw.empty()) {
        out.error = CommandError::unknown_target;
        return out;
    }
    const std::string text = normalize_text(raw);

    static const std::regex kRoomPattern(
        R"((?:^|\s)(?:room(?:\s+number)?(?:\s+plate)?|rnp)\s*0*(\d+)(?:\s|$))",
        std::regex::icase);
    std::smatch m;
    if (std::regex_search(text, m, kRoomPattern)) {
        const std::string wanted = "room number plate " + m[1].str();
        for (const auto& obj : map.objects) {
            if (normalize_text(obj.name) == wanted) {
                out.command = Command{raw, obj.name, 0.0};
                return out;
            }
        }
        out.error = CommandError::unknown_target;
        return out;
    }

    // Full object names appearing in the text; keep only the longest matches
    // so "window 02" does not also count as a bare "window" hit.
    std::vector<const TargetObject*> full;
    std::size_t best_len = 0;
    for (const auto& obj : map.objects) {
        const std::string name = normalize_text(obj.name);
        if (!contains_phrase(text, name)) continue;
        if (name.size() > best_len) {
            best_len = name.size();
            full.clear();
        }
        if (name.size() == best_len) full.push_back(&obj);
    }
    if (full.size() == 1) {
        out.command = Command{raw, full.front()->name, 0.0};
        return out;
    }
    if (full.size() > 1) {
        out.error = CommandError::ambiguous_target;
        for (const auto* obj : full) out.candidates.push_back(obj->name);
        return out;
    }

    // Leading-word match: "go to the window" against "Window 01"/"Window 02".
    std::vector<const TargetObject*> partial;
    for (const auto& obj : map.objects) {
        const std::string name = normalize_text(obj.name);
        const std::string head = name.substr(0, name.find(' '));
        if (contains_phrase(text, head)) partial.push_back(&obj);
    }
    if (partial.size() == 1) {
        out.command = Command{raw, partial.front()->name, 0.0};
        return out;
    }
    if (partial.size() > 1) {
        out.error = CommandError::ambiguous_target;
        for (const auto* obj : partial) out.candidates.push_back(obj->name);
        return out;
    }
    out.error = CommandError::unknown_target;
    return out;
}

// ---------------------------------------------------------------------------
// Prompts

struct PromptTemplates {
    std::string system_template;
    std::string user_template;

    // Placeholders: {corridors} {safe_margin} {pose_x} {pose_y} {pose_theta}
    // {target_name} {target_x} {target_y} {max_waypoints} {min_spacing}
    // {tolerance} {extra}
    static PromptTemplates defaults() {
        PromptTemplates t;
        t.system_template =
            "You are the path planner of a differential-drive mobile robot operating in an\n"
            "indoor environment made of axis-aligned rectangular corridors.\n"
            "Corridors (map frame, meters):\n"
            "{corridors}"
            "A safe margin of {safe_margin} m from every corridor wall must be kept at all times.\n"
            "The robot is currently at x={pose_x} m, y={pose_y} m, heading={pose_theta} rad.\n";
        t.user_template =
            "Plan a route from the robot's current position to the target \"{target_name}\"\n"
            "located at x={target_x} m, y={target_y} m.\n"
            "Produce at most {max_waypoints} waypoints, spaced at least {min_spacing} m apart.\n"
            "The final waypoint must lie within {tolerance} m of the target position.\n"
            "Every waypoint must keep the {safe_margin} m safe margin from all corridor walls.\n"
            "{extra}"
            "Answer with ONLY a JSON array of waypoints, each element exactly of the form\n"
            "{\"x\": <number>, \"y\": <number>}. No explanations, no code fences.\n";
        return t;
    }

    // Loads <dir>/system_prompt.txt and <dir>/user_prompt.txt so prompts can
    // be tuned without rebuilding.
    static PromptTemplates from_files(const std::string& dir) {
        auto read = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw ConfigError("prompt template: cannot open '" + path + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        PromptTemplates t;
        t.system_template = read(dir + "/system_prompt.txt");
        t.user_template = read(dir + "/user_prompt.txt");
        return t;
    }
};

struct PromptPair {
    std::string system_prompt;
    std::string user_prompt;
};

struct PlannerConfig {
    double min_spacing = 0.7;        // m
    double tolerance_t = 0.05;       // m
    int max_waypoints = 6;           // per environment
    int max_parse_retries = 3;
    double provider_timeout_s = 60.0;
    PromptTemplates templates = PromptTemplates::defaults();

    // Waypoint-count limits per built-in environment; custom maps keep the
    // default.
    static PlannerConfig for_environment(std::string_view env_name) {
        PlannerConfig cfg;
        if (env_name == "env_a") cfg.max_waypoints = 4;
        else if (env_name == "env_b") cfg.max_waypoints = 5;
        else cfg.max_waypoints = 6;
        return cfg;
    }
};

inline PromptPair build_prompts(const EnvironmentMap& map, const Pose& pose,
                                const TargetObject& target, const PlannerConfig& cfg,
                                const std::string& extra_user_note = "") {
    std::string corridors;
    for (const auto& c : map.corridors) {
        corridors += "  - " + c.name + ": x in [" + fmt_num(c.x_min) + ", " +
                     fmt_num(c.x_max) + "], y in [" + fmt_num(c.y_min) + ", " +
                     fmt_num(c.y_max) + "]\n";
    }
    std::map<std::string, std::string> values{
        {"corridors", corridors},
        {"safe_margin", fmt_num(map.safe_margin)},
        {"pose_x", fmt_num(pose.x)},
        {"pose_y", fmt_num(pose.y)},
        {"pose_theta", fmt_num(pose.theta)},
        {"target_name", target.name},
        {"target_x", fmt_num(target.position.x)},
        {"target_y", fmt_num(target.position.y)},
        {"max_waypoints", std::to_string(cfg.max_waypoints)},
        {"min_spacing", fmt_num(cfg.min_spacing)},
        {"tolerance", fmt_num(cfg.tolerance_t)},
        {"extra", extra_user_note.empty() ? std::string() : extra_user_note + "\n"},
    };
    return {substitute(cfg.templates.system_template, values),
            substitute(cfg.templates.user_template, values)};
}

// ---------------------------------------------------------------------------
// Waypoint wire format

struct WaypointParse {
    std::vector<Point> points;
    std::string error;
    bool ok = false;
};

namespace detail {

// Finds the end of the JSON value starting at text[start] == '[' by bracket
// matching that respects strings and escapes. Returns npos when unbalanced.
inline std::size_t match_bracket(const std::string& text, std::size_t start) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '[' || c == '{') ++depth;
        else if (c == ']' || c == '}') {
            --depth;
            if (depth == 0) return i;
            if (depth < 0) return std::string::npos;
        }
    }
    return std::string::npos;
}

}  // namespace detail

// Extracts the first well-formed JSON array from the text (models often wrap
// output in prose or code fences) and reads it as waypoint objects with
// numeric "x" and "y" fields. Total: never throws on arbitrary bytes.
inline WaypointParse parse_waypoints(const std::string& text) {
    WaypointParse out;
    std::size_t pos = 0;
    while ((pos = text.find('[', pos)) != std::string::npos) {
        const std::size_t end = detail::match_bracket(text, pos);
        if (end == std::string::npos) {
            ++pos;
            continue;
        }
        const std::string candidate = text.substr(pos, end - pos + 1);
        nlohmann::json j = nlohmann::json::parse(candidate, nullptr, false);
        if (j.is_discarded() || !j.is_array()) {
            ++pos;
            continue;
        }
        if (j.empty()) {
            out.error = "waypoint array is empty";
            return out;
        }
        std::vector<Point> points;
        for (const auto& e : j) {
            if (!e.is_object() || !e.contains("x") || !e.contains("y") ||
                !e["x"].is_number() || !e["y"].is_number()) {
                out.error = "waypoint element is not an object with numeric \"x\" and \"y\"";
                return out;
            }
            const double x = e["x"].get<double>();
            const double y = e["y"].get<double>();
            if (!std::isfinite(x) || !std::isfinite(y)) {
                out.error = "waypoint coordinate is not finite";
                return out;
            }
            points.push_back({x, y});
        }
        out.points = std::move(points);
        out.ok = true;
        return out;
    }
    out.error = "no JSON array found in provider output";
    return out;
}

inline std::string waypoints_to_json(const std::vector<Point>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) arr.push_back({{"x", p.x}, {"y", p.y}});
    return arr.dump();
}

// ---------------------------------------------------------------------------
// Validation

enum class ProviderKind { oracle, llm, stub };

struct ProviderDescriptor {
    ProviderKind kind = ProviderKind::oracle;
    std::string model;  // for llm providers

    std::string to_string() const {
        switch (kind) {
            case ProviderKind::oracle: return "oracle";
            case ProviderKind::stub: return "stub";
            case ProviderKind::llm: return "llm:" + model;
        }
        return "?";
    }
};

struct Path {
    std::vector<Point> waypoints;
    ProviderDescriptor provider;
    bool validated = false;
    TargetObject target;

    double polyline_length(Point from) const {
        double total = 0.0;
        Point prev = from;
        for (const auto& w : waypoints) {
            total += distance(prev, w);
            prev = w;
        }
        return total;
    }
};

struct RejectedPoint {
    Point point;
    std::string reason;
};

enum class ValidationFailure { none, all_waypoints_invalid, target_unreachable };

struct ValidationReport {
    std::vector<RejectedPoint> rejected;
    ValidationFailure failure = ValidationFailure::none;
    std::string detail;

    std::string summary() const {
        std::string s;
        for (const auto& r : rejected) {
            s += "rejected waypoint (" + fmt_num(r.point.x) + ", " + fmt_num(r.point.y) +
                 "): " + r.reason + "\n";
        }
        if (failure == ValidationFailure::all_waypoints_invalid)
            s += "all waypoints were invalid\n";
        if (failure == ValidationFailure::target_unreachable)
            s += "final waypoint cannot be brought within tolerance of the target\n";
        if (!detail.empty()) s += detail + "\n";
        return s;
    }
};

struct ValidationResult {
    std::optional<Path> path;
    ValidationReport report;

    bool ok() const { return path.has_value(); }
};

// Validates a candidate waypoint list against the map:
//  1. waypoints outside the safe-margin interior are discarded;
//  2. waypoints closer than min_spacing to their accepted predecessor are
//     discarded, except the final point;
//  3. if the surviving final point is farther than tolerance_t from the
//     target, the target position itself is appended when it satisfies the
//     margin, otherwise validation fails.
inline ValidationResult validate_path(const std::vector<Point>& points,
                                      const EnvironmentMap& map,
                                      const TargetObject& target,
                                      const PlannerConfig& cfg,
                                      ProviderDescriptor provider = {}) {
    assert(!points.empty());
    ValidationResult out;

    std::vector<Point> margin_ok;
    for (const auto& p : points) {
        if (map.within_margin(p)) {
            margin_ok.push_back(p);
        } else {
            out.report.rejected.push_back({p, "outside the safe-margin corridor interior"});
        }
    }
    if (margin_ok.empty()) {
        out.report.failure = ValidationFailure::all_waypoints_invalid;
        return out;
    }

    std::vector<Point> accepted;
    for (std::size_t i = 0; i < margin_ok.size(); ++i) {
        const bool is_final = (i + 1 == margin_ok.size());
        if (!accepted.empty() && !is_final &&
            distance(accepted.back(), margin_ok[i]) + 1e-9 < cfg.min_spacing) {
            out.report.rejected.push_back(
                {margin_ok[i], "closer than the minimum spacing to the previous waypoint"});
            continue;
        }
        accepted.push_back(margin_ok[i]);
    }

    const double d = distance(accepted.back(), target.position);
    if (d > cfg.tolerance_t) {
        if (!map.within_margin(target.position)) {
            out.report.failure = ValidationFailure::target_unreachable;
            out.report.detail = "target position violates the safe margin";
            return out;
        }
        accepted.push_back(target.position);
    }

    Path path;
    path.waypoints = std::move(accepted);
    path.provider = provider;
    path.validated = true;
    path.target = target;
    out.path = std::move(path);
    return out;
}

// ---------------------------------------------------------------------------
// Oracle planner

struct OraclePlanResult {
    std::vector<Point> points;
    std::string error;
    bool ok = false;
};

namespace detail {

// Emits intermediate waypoints from `from` toward `to` at min_spacing steps,
// clamped into the margin interior of the given corridor, then `to` itself.
// Non-final legs keep the last intermediate at least min_spacing before the
// leg end so downstream spacing validation never discards a point.
inline void emit_leg(std::vector<Point>& out, Point from, Point to,
                     const Corridor& corridor, double margin, double spacing,
                     bool final_leg) {
    const double len = distance(from, to);
    const Point dir = unit(to - from);
    const double limit = final_leg ? len - 1e-9 : len - spacing + 1e-9;
    for (double s = spacing; s <= limit; s += spacing) {
        out.push_back(corridor.clamp_to_margin(from + s * dir, margin));
    }
    out.push_back(to);
}

// Clearance from a point to the nearest avoid-circle surface; +inf when none.
inline double min_clearance(Point p, const std::vector<Circle>& avoid) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : avoid)
        best = std::min(best, distance(p, c.center) - c.radius);
    return best;
}

// Re-routes a straight leg around avoid-circles by inserting two pivot
// points beside the first blocking circle. Points are pushed radially out of
// any keep-out disc they land in, then clamped back into the corridor margin
// box; returns false when no side has room.
inline bool emit_leg_avoiding(std::vector<Point>& out, Point from, Point to,
                              const Corridor& corridor, double margin,
                              double spacing, bool final_leg,
                              const std::vector<Circle>& avoid, double clearance) {
    const double pad = 0.1;
    auto keepout = [&](const Circle& c) { return c.radius + clearance + pad; };

    const Circle* blocking = nullptr;
    for (const auto& c : avoid) {
        if (point_segment_distance(c.center, {from, to}) < keepout(c)) {
            blocking = &c;
            break;
        }
    }
    if (!blocking) {
        emit_leg(out, from, to, corridor, margin, spacing, final_leg);
        return true;
    }

    const Point dir = unit(to - from);
    const Point lateral = perp(dir);
    const double r = keepout(*blocking);
    const double along = std::clamp(dot(blocking->center - from, dir), 0.0, distance(from, to));
    const Point foot = from + along * dir;

    auto fix_point = [&](Point p) -> std::optional<Point> {
        p = corridor.clamp_to_margin(p, margin);
        for (int iter = 0; iter < 4; ++iter) {
            bool moved = false;
            for (const auto& c : avoid) {
                const double d = distance(p, c.center);
                if (d < keepout(c)) {
                    const Point away = d > 1e-9 ? unit(p - c.center) : lateral;
                    p = corridor.clamp_to_margin(c.center + keepout(c) * away, margin);
                    moved = true;
                }
            }
            if (!moved) break;
        }
        return min_clearance(p, avoid) > clearance ? std::optional<Point>(p) : std::nullopt;
    };

    for (double side : {+1.0, -1.0}) {
        const auto before = fix_point(foot - r * dir + side * r * lateral);
        const auto after = fix_point(foot + r * dir + side * r * lateral);
        if (!before || !after) continue;
        std::vector<Point> detour;
        emit_leg(detour, from, *before, corridor, margin, spacing, false);
        emit_leg(detour, *before, *after, corridor, margin, spacing, false);
        emit_leg(detour, *after, to, corridor, margin, spacing, final_leg);
        bool all_clear = true;
        for (const auto& p : detour) {
            if (min_clearance(p, avoid) <= clearance) {
                all_clear = false;
                break;
            }
        }
        if (!all_clear) continue;
        out.insert(out.end(), detour.begin(), detour.end());
        return true;
    }
    return false;
}

}  // namespace detail

// Deterministic geometric planner. Same corridor: straight segment sampled at
// min_spacing ending exactly at the target. Different corridors: breadth-first
// search over the corridor adjacency graph, routing through junction points.
// With avoid-circles (replanning), legs detour so every emitted waypoint keeps
// more than `clearance` from each circle's surface. Output size may exceed
// max_waypoints: this is an internal planner, not an LLM imitation.
inline OraclePlanResult oracle_plan(const EnvironmentMap& map, const Pose& pose,
                                    const TargetObject& target, const PlannerConfig& cfg,
                                    const std::vector<Circle>& avoid = {},
                                    double clearance = 0.0) {
    OraclePlanResult out;
    const Point start = pose.position();
    const Point goal = target.position;
    if (!map.within_margin(start)) {
        out.error = "robot position violates the safe margin";
        return out;
    }
    if (!map.within_margin(goal)) {
        out.error = "target position violates the safe margin";
        return out;
    }

    const auto start_corridors = map.margin_corridors(start);
    const auto goal_corridors = map.margin_corridors(goal);

    // Legs as (from, to, corridor) triples.
    struct Leg {
        Point from, to;
        std::size_t corridor;
    };
    std::vector<Leg> legs;

    std::optional<std::size_t> shared;
    for (auto s : start_corridors) {
        for (auto g : goal_corridors) {
            if (s == g && !shared) shared = s;
        }
        if (shared) break;
    }

    if (shared) {
        legs.push_back({start, goal, *shared});
    } else {
        // BFS over corridors; edges are junctions.
        const std::size_t n = map.corridors.size();
        std::vector<int> prev_corridor(n, -1);
        std::vector<int> prev_junction(n, -1);
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> queue;
        for (auto s : start_corridors) {
            seen[s] = true;
            queue.push_back(s);
        }
        std::optional<std::size_t> reached;
        while (!queue.empty() && !reached) {
            const std::size_t cur = queue.front();
            queue.pop_front();
            for (auto g : goal_corridors) {
                if (cur == g) {
                    reached = cur;
                    break;
                }
            }
            if (reached) break;
            for (std::size_t ji = 0; ji < map.junctions.size(); ++ji) {
                const auto& j = map.junctions[ji];
                const auto a = map.corridor_index(j.corridor_a);
                const auto b = map.corridor_index(j.corridor_b);
                if (!a || !b) continue;
                std::optional<std::size_t> next;
                if (*a == cur) next = *b;
                else if (*b == cur) next = *a;
                if (!next || seen[*next]) continue;
                seen[*next] = true;
                prev_corridor[*next] = static_cast<int>(cur);
                prev_junction[*next] = static_cast<int>(ji);
                queue.push_back(*next);
            }
        }
        if (!reached) {
            out.error = "no junction path connects the robot's corridor to the target's";
            return out;
        }
        // Walk back to the start corridor collecting junctions.
        std::vector<std::pair<Point, std::size_t>> hops;  // (junction point, corridor entered)
        std::size_t cur = *reached;
        while (prev_corridor[cur] >= 0) {
            hops.push_back({map.junctions[static_cast<std::size_t>(prev_junction[cur])].position, cur});
            cur = static_cast<std::size_t>(prev_corridor[cur]);
        }
        std::reverse(hops.begin(), hops.end());
        Point at = start;
        std::size_t at_corridor = cur;
        for (const auto& [jp, entered] : hops) {
            legs.push_back({at, jp, at_corridor});
            at = jp;
            at_corridor = entered;
        }
        legs.push_back({at, goal, at_corridor});
    }

    for (std::size_t i = 0; i < legs.size(); ++i) {
        const bool final_leg = (i + 1 == legs.size());
        const auto& corridor = map.corridors[legs[i].corridor];
        if (avoid.empty()) {
            detail::emit_leg(out.points, legs[i].from, legs[i].to, corridor,
                             map.safe_margin, cfg.min_spacing, final_leg);
        } else if (!detail::emit_leg_avoiding(out.points, legs[i].from, legs[i].to,
                                              corridor, map.safe_margin, cfg.min_spacing,
                                              final_leg, avoid, clearance)) {
            out.points.clear();
            out.error = "no detour with the required obstacle clearance fits the corridor";
            return out;
        }
    }
    // Junction points duplicate across consecutive legs' endpoints; emit_leg
    // already starts after `from`, so only exact duplicates need dropping.
    std::vector<Point> dedup;
    for (const auto& p : out.points) {
        if (dedup.empty() || distance(dedup.back(), p) > 1e-12) dedup.push_back(p);
    }
    out.points = std::move(dedup);
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Provider interface and the plan() driver

struct GenerateResult {
    std::string text;
    enum class Error { none, unavailable, http, generation } error = Error::none;
    int status = 0;
    std::string message;

    bool ok() const { return error == Error::none; }
};

// Context handed to local planners before generation; text-only providers
// ignore it.
struct PlanRequest {
    const EnvironmentMap* map = nullptr;
    Pose pose;
    TargetObject target;
    PlannerConfig cfg;
    std::vector<Circle> avoid;
    double clearance = 0.0;
};

class WaypointProvider {
  public:
    virtual ~WaypointProvider() = default;
    virtual GenerateResult generate(const PromptPair& prompts, double timeout_s) = 0;
    virtual ProviderDescriptor descriptor() const = 0;
    // Deterministic providers involve no external latency; planning time is
    // reported as zero for them so run artifacts are reproducible.
    virtual bool deterministic() const { return false; }
    // True when repeated generate() calls for one bound request cannot
    // differ; lets callers skip pointless retries.
    virtual bool repeats_output() const { return false; }
    virtual void bind(const PlanRequest&) {}
};

struct PlanningStats {
    int attempts = 0;   // generation attempts (psi)
    int successes = 0;  // attempts that yielded a validated path (phi)
    double planning_time_s = 0.0;
};

enum class PlanFailure { none, provider_unavailable, planning_failed };

struct PlanResult {
    std::optional<Path> path;
    PlanningStats stats;
    PlanFailure failure = PlanFailure::none;
    std::string detail;

    bool ok() const { return path.has_value(); }
};

// Notified once per generation attempt with its success; used by the
// navigator to keep the run event log faithful.
using AttemptSink = std::function<void(bool success)>;

// Builds prompts, invokes the provider, parses and validates; on failure the
// provider is re-invoked up to max_parse_retries times with the failure
// report appended to the user prompt.
inline PlanResult plan(const Command& command, const Pose& pose,
                       const EnvironmentMap& map, WaypointProvider& provider,
                       const PlannerConfig& cfg, const AttemptSink& on_attempt = {}) {
    PlanResult out;
    const TargetObject* target = map.find_object(command.target_name);
    if (!target) {
        out.failure = PlanFailure::planning_failed;
        out.detail = "command target '" + command.target_name + "' is not in the environment";
        return out;
    }

    PlanRequest request{&map, pose, *target, cfg, {}, 0.0};
    provider.bind(request);

    const auto t0 = std::chrono::steady_clock::now();
    std::string feedback;
    for (int attempt = 1; attempt <= cfg.max_parse_retries; ++attempt) {
        std::string note;
        if (!feedback.empty())
            note = "Regenerate: the previous attempt was rejected.\n" + feedback;
        const PromptPair prompts = build_prompts(map, pose, *target, cfg, note);
        const GenerateResult gen = provider.generate(prompts, cfg.provider_timeout_s);
        if (gen.error == GenerateResult::Error::unavailable) {
            out.failure = PlanFailure::provider_unavailable;
            out.detail = gen.message;
            break;
        }
        ++out.stats.attempts;
        if (!gen.ok()) {
            feedback = gen.message;
            if (on_attempt) on_attempt(false);
            continue;
        }
        const WaypointParse parsed = parse_waypoints(gen.text);
        if (!parsed.ok) {
            feedback = parsed.error;
            if (on_attempt) on_attempt(false);
            continue;
        }
        ValidationResult validated =
            validate_path(parsed.points, map, *target, cfg, provider.descriptor());
        if (!validated.ok()) {
            feedback = validated.report.summary();
            if (on_attempt) on_attempt(false);
            continue;
        }
        ++out.stats.successes;
        if (on_attempt) on_attempt(true);
        out.path = std::move(validated.path);
        break;
    }
    if (!out.path && out.failure == PlanFailure::none) {
        out.failure = PlanFailure::planning_failed;
        out.detail = feedback;
    }
    if (!provider.deterministic()) {
        out.stats.planning_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
}

}  // namespace nav
