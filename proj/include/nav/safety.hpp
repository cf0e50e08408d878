#pragma once

// Obstacle assessment from LIDAR scans, the emergency-stop decision, and the
// replanning trigger policy (attempt limit plus cooldown).

#include <cassert>
#include <cmath>
#include <limits>
#include <optional>

#include "nav/scan.hpp"

namespace nav {

struct SafetyConfig {
    double d_slowstop = 0.5;                  // m, halt-and-evaluate band
    double d_emergency = 0.35;                // m, emergency stop + replanning
    double frontal_half_angle = 0.2618;       // rad (15 degrees)
    int max_replans = 5;
    double cooldown_s = 5.0;
    double obstacle_estimate_radius = 0.3;    // m, assumed extent of a detected obstacle
};

enum class Assessment { clear, slow_stop, emergency };

struct AssessResult {
    Assessment level = Assessment::clear;
    // Minimum range over the frontal cone and its bearing; infinity / 0 when
    // no beam lies in the cone.
    double min_range = std::numeric_limits<double>::infinity();
    double bearing = 0.0;
};

// Both thresholds apply only inside the frontal cone: emergency when any
// frontal range is below d_emergency, else slow_stop below d_slowstop, else
// clear. Reports the minimizing beam.
inline AssessResult assess(const ScanData& scan, const SafetyConfig& cfg) {
    AssessResult out;
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
        if (std::abs(scan.bearings[i]) >= cfg.frontal_half_angle) continue;
        if (scan.ranges[i] < out.min_range) {
            out.min_range = scan.ranges[i];
            out.bearing = scan.bearings[i];
        }
    }
    if (out.min_range < cfg.d_emergency) out.level = Assessment::emergency;
    else if (out.min_range < cfg.d_slowstop) out.level = Assessment::slow_stop;
    return out;
}

struct ReplanLedger {
    int attempts = 0;                          // mu
    std::optional<double> last_replan_time;    // t_lr, sim seconds
};

// True iff attempts remain and the cooldown since the last attempt has
// strictly elapsed. A true result must be followed by record_attempt.
inline bool should_replan(const ReplanLedger& ledger, double now, const SafetyConfig& cfg) {
    if (ledger.attempts >= cfg.max_replans) return false;
    if (ledger.last_replan_time && now - *ledger.last_replan_time <= cfg.cooldown_s)
        return false;
    return true;
}

inline void record_attempt(ReplanLedger& ledger, double now, const SafetyConfig& cfg) {
    assert(should_replan(ledger, now, cfg) && "record_attempt without a should_replan check");
    (void)cfg;
    ++ledger.attempts;
    ledger.last_replan_time = now;
}

}  // namespace nav
