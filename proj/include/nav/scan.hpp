#pragma once

// One simulated LIDAR sweep in the robot body frame.

#include <vector>

namespace nav {

struct ScanData {
    std::vector<double> ranges;    // meters, (0, max_range]
    std::vector<double> bearings;  // radians, strictly increasing over [-pi, pi)
    double stamp = 0.0;            // sim seconds
};

}  // namespace nav
