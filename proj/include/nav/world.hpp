#pragma once

// Geometric model of a test environment: axis-aligned corridor rectangles,
// named target objects, junctions between corridors, the wall boundary, and
// runtime dynamic obstacles. Also point-membership queries and LIDAR
// raycasting against walls and obstacles.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nav/geometry.hpp"
#include "nav/scan.hpp"

namespace nav {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Corridor {
    std::string name;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    bool contains(Point p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    // Closed margin-shrunk interior test.
    bool margin_contains(Point p, double m) const {
        return p.x >= x_min + m && p.x <= x_max - m &&
               p.y >= y_min + m && p.y <= y_max - m;
    }

    Point clamp_to_margin(Point p, double m) const {
        return {std::clamp(p.x, x_min + m, x_max - m),
                std::clamp(p.y, y_min + m, y_max - m)};
    }
};

struct TargetObject {
    std::string name;
    Point position;
    std::string corridor;
};

struct Junction {
    Point position;
    std::string corridor_a;
    std::string corridor_b;
};

struct EnvironmentMap {
    std::string name;
    double safe_margin = 0.5;
    Pose start_pose;
    std::vector<Corridor> corridors;
    std::vector<TargetObject> objects;
    std::vector<Junction> junctions;
    std::vector<Segment> walls;
    std::vector<Circle> dynamic_obstacles;  // mutable between sim steps only

    const TargetObject* find_object(std::string_view object_name) const {
        for (const auto& obj : objects)
            if (obj.name == object_name) return &obj;
        return nullptr;
    }

    std::optional<std::size_t> corridor_index(std::string_view corridor_name) const {
        for (std::size_t i = 0; i < corridors.size(); ++i)
            if (corridors[i].name == corridor_name) return i;
        return std::nullopt;
    }

    // First corridor (declaration order) whose closed rectangle contains p.
    std::optional<std::size_t> containing_corridor(Point p) const {
        for (std::size_t i = 0; i < corridors.size(); ++i)
            if (corridors[i].contains(p)) return i;
        return std::nullopt;
    }

    bool within_margin(Point p) const {
        for (const auto& c : corridors)
            if (c.margin_contains(p, safe_margin)) return true;
        return false;
    }

    // All corridors whose margin-shrunk interior contains p, declaration order.
    std::vector<std::size_t> margin_corridors(Point p) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < corridors.size(); ++i)
            if (corridors[i].margin_contains(p, safe_margin)) out.push_back(i);
        return out;
    }

    // Inside the corridor union, with slack for wall-penetration checks.
    bool inside_union(Point p, double slack = 0.0) const {
        for (const auto& c : corridors) {
            if (p.x >= c.x_min - slack && p.x <= c.x_max + slack &&
                p.y >= c.y_min - slack && p.y <= c.y_max + slack)
                return true;
        }
        return false;
    }
};

// Synthesizes one LIDAR sweep: beam_count evenly spaced bearings covering
// [-pi, pi) in the body frame. Each range is the distance to the nearest wall
// segment or dynamic obstacle, clamped to max_range when nothing is hit.
inline ScanData cast_scan(const EnvironmentMap& map, const Pose& pose,
                          int beam_count, double max_range) {
    if (beam_count < 1) throw std::invalid_argument("cast_scan: beam_count must be >= 1");
    if (max_range <= 0.0) throw std::invalid_argument("cast_scan: max_range must be > 0");

    ScanData scan;
    scan.ranges.resize(static_cast<std::size_t>(beam_count));
    scan.bearings.resize(static_cast<std::size_t>(beam_count));
    const Point origin = pose.position();
    const double step = 2.0 * kPi / beam_count;
    for (int i = 0; i < beam_count; ++i) {
        const double bearing = -kPi + i * step;
        const double world = pose.theta + bearing;
        const Point dir{std::cos(world), std::sin(world)};
        double best = max_range;
        for (const auto& wall : map.walls) {
            if (auto t = ray_segment(origin, dir, wall); t && *t < best) best = *t;
        }
        for (const auto& obs : map.dynamic_obstacles) {
            if (auto t = ray_circle(origin, dir, obs); t && *t < best) best = *t;
        }
        scan.bearings[static_cast<std::size_t>(i)] = bearing;
        scan.ranges[static_cast<std::size_t>(i)] = std::max(best, 1e-9);
    }
    return scan;
}

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(std::string("environment: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ConfigError(std::string("environment: missing string field '") + key + "'");
    return j[key].get<std::string>();
}

}  // namespace detail

// Validates the structural invariants of a fully built map. Throws ConfigError.
inline void validate_environment(const EnvironmentMap& map) {
    if (map.safe_margin <= 0.0) throw ConfigError("environment: safe_margin must be > 0");
    if (map.corridors.empty()) throw ConfigError("environment: no corridors");
    const double m = map.safe_margin;
    for (const auto& c : map.corridors) {
        if (!(c.x_min < c.x_max) || !(c.y_min < c.y_max))
            throw ConfigError("environment: corridor '" + c.name + "' has inverted bounds");
        if (!(c.x_max - c.x_min > 2.0 * m) || !(c.y_max - c.y_min > 2.0 * m))
            throw ConfigError("environment: corridor '" + c.name +
                              "' is too narrow for the safe margin");
    }
    std::vector<std::string> seen;
    for (const auto& obj : map.objects) {
        if (std::find(seen.begin(), seen.end(), obj.name) != seen.end())
            throw ConfigError("environment: duplicate object name '" + obj.name + "'");
        seen.push_back(obj.name);
        auto idx = map.corridor_index(obj.corridor);
        if (!idx)
            throw ConfigError("environment: object '" + obj.name +
                              "' references unknown corridor '" + obj.corridor + "'");
        if (!map.corridors[*idx].margin_contains(obj.position, m))
            throw ConfigError("environment: object '" + obj.name +
                              "' lies outside its corridor's safe-margin interior");
    }
    for (const auto& j : map.junctions) {
        auto a = map.corridor_index(j.corridor_a);
        auto b = map.corridor_index(j.corridor_b);
        if (!a || !b)
            throw ConfigError("environment: junction references unknown corridor");
        if (!map.corridors[*a].margin_contains(j.position, m) ||
            !map.corridors[*b].margin_contains(j.position, m))
            throw ConfigError("environment: junction point outside a connected corridor's margin interior");
    }
    if (!map.within_margin(map.start_pose.position()))
        throw ConfigError("environment: start pose outside safe-margin interior");
}

// Parses the environment file schema:
//   { "name", "safe_margin", "start_pose": {x,y,theta},
//     "corridors": [{name,x_min,x_max,y_min,y_max}],
//     "objects":   [{name,x,y,corridor}],
//     "junctions": [{x,y,connects:[a,b]}],
//     "walls":     [{x1,y1,x2,y2}] }
inline EnvironmentMap load_environment_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("environment: not a JSON object");

    EnvironmentMap map;
    map.name = j.value("name", std::string("custom"));
    map.safe_margin = j.value("safe_margin", 0.5);
    if (j.contains("start_pose")) {
        const auto& p = j["start_pose"];
        map.start_pose.x = detail::require_number(p, "x");
        map.start_pose.y = detail::require_number(p, "y");
        map.start_pose.theta = wrap_angle(p.value("theta", 0.0));
    }
    for (const auto& c : j.value("corridors", nlohmann::json::array())) {
        Corridor cor;
        cor.name = detail::require_string(c, "name");
        cor.x_min = detail::require_number(c, "x_min");
        cor.x_max = detail::require_number(c, "x_max");
        cor.y_min = detail::require_number(c, "y_min");
        cor.y_max = detail::require_number(c, "y_max");
        map.corridors.push_back(cor);
    }
    for (const auto& o : j.value("objects", nlohmann::json::array())) {
        TargetObject obj;
        obj.name = detail::require_string(o, "name");
        obj.position = {detail::require_number(o, "x"), detail::require_number(o, "y")};
        obj.corridor = detail::require_string(o, "corridor");
        map.objects.push_back(obj);
    }
    for (const auto& jn : j.value("junctions", nlohmann::json::array())) {
        Junction junction;
        junction.position = {detail::require_number(jn, "x"), detail::require_number(jn, "y")};
        const auto& con = jn.value("connects", nlohmann::json::array());
        if (!con.is_array() || con.size() != 2 || !con[0].is_string() || !con[1].is_string())
            throw ConfigError("environment: junction 'connects' must name two corridors");
        junction.corridor_a = con[0].get<std::string>();
        junction.corridor_b = con[1].get<std::string>();
        map.junctions.push_back(junction);
    }
    for (const auto& w : j.value("walls", nlohmann::json::array())) {
        Segment s;
        s.a = {detail::require_number(w, "x1"), detail::require_number(w, "y1")};
        s.b = {detail::require_number(w, "x2"), detail::require_number(w, "y2")};
        map.walls.push_back(s);
    }
    validate_environment(map);
    return map;
}

}  // namespace nav
