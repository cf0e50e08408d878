#pragma once

// Frame transformation between the map frame and the robot's odometry frame,
// plus the proportional waypoint-tracking controller.

#include <algorithm>
#include <cmath>
#include <optional>

#include "nav/geometry.hpp"

namespace nav {

enum class Frame { map, odom };

// Frame-tagged point; the tag is checked at compile time at the transform
// boundary so a map-frame waypoint cannot be fed where an odom-frame one is
// expected.
template <Frame F>
struct FramedPoint {
    double x = 0.0;
    double y = 0.0;

    Point point() const { return {x, y}; }
};

using MapPoint = FramedPoint<Frame::map>;
using OdomPoint = FramedPoint<Frame::odom>;

// Rotation by the robot's map-frame orientation followed by translation by
// its map-frame position:
//   [x_od; y_od] = R(theta_ro) [x_m; y_m] + [x_ro; y_ro]
inline OdomPoint map_to_odom(MapPoint p, const Pose& robot_map_pose) {
    const double c = std::cos(robot_map_pose.theta);
    const double s = std::sin(robot_map_pose.theta);
    return {c * p.x - s * p.y + robot_map_pose.x,
            s * p.x + c * p.y + robot_map_pose.y};
}

// Exact inverse of map_to_odom.
inline MapPoint odom_to_map(OdomPoint p, const Pose& robot_map_pose) {
    const double c = std::cos(robot_map_pose.theta);
    const double s = std::sin(robot_map_pose.theta);
    const double dx = p.x - robot_map_pose.x;
    const double dy = p.y - robot_map_pose.y;
    return {c * dx + s * dy, -s * dx + c * dy};
}

// Pushes a full pose through the same rigid transform (heading rotates with
// the frame). Used by the navigator to track waypoints in the odom frame.
inline Pose pose_to_odom(const Pose& p, const Pose& frame_ref) {
    const OdomPoint pos = map_to_odom(MapPoint{p.x, p.y}, frame_ref);
    return {pos.x, pos.y, wrap_angle(p.theta + frame_ref.theta)};
}

struct VelocityCommand {
    double linear = 0.0;   // m/s
    double angular = 0.0;  // rad/s

    bool is_zero() const { return linear == 0.0 && angular == 0.0; }
};

struct ControllerConfig {
    double k_linear = 0.8;             // 1/s
    double k_angular = 2.5;            // 1/s
    double max_linear = 0.4;           // m/s
    double max_angular = 2.0;          // rad/s
    double distance_threshold = 0.1;   // m, waypoint reach tolerance
    double angle_threshold = 0.087;    // rad, angular alignment tolerance
    // Linear velocity is suppressed (turn in place) while the angular error
    // exceeds this multiple of angle_threshold; keeps the proportional law
    // from arcing out of the corridor margin.
    double turn_in_place_factor = 4.0;
};

inline double distance_to(Point p, Point q) { return distance(p, q); }

// atan2(y_tw - y_ro, x_tw - x_ro) - theta_ro, wrapped into [-pi, pi).
// nullopt when the target coincides with the robot (bearing undefined).
inline std::optional<double> angular_error(const Pose& pose, Point target) {
    const double dx = target.x - pose.x;
    const double dy = target.y - pose.y;
    if (std::abs(dx) < 1e-12 && std::abs(dy) < 1e-12) return std::nullopt;
    return wrap_angle(std::atan2(dy, dx) - pose.theta);
}

struct ControlDecision {
    VelocityCommand cmd;
    bool reached = false;
};

inline ControlDecision control_step(const Pose& pose, Point target,
                                    const ControllerConfig& cfg) {
    const double d = distance_to(pose.position(), target);
    if (d <= cfg.distance_threshold) return {{0.0, 0.0}, true};

    const auto alpha = angular_error(pose, target);
    if (!alpha) return {{0.0, 0.0}, true};  // target under the robot

    VelocityCommand cmd;
    cmd.angular = std::clamp(cfg.k_angular * *alpha, -cfg.max_angular, cfg.max_angular);
    if (std::abs(*alpha) > cfg.turn_in_place_factor * cfg.angle_threshold) {
        cmd.linear = 0.0;
    } else {
        cmd.linear = std::clamp(cfg.k_linear * d, 0.0, cfg.max_linear);
    }
    return {cmd, false};
}

}  // namespace nav
