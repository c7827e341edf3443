// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "vxc/geom/vec3.hpp"

namespace vxc::geom {

/// Intrinsic object rotation about the grid origin. Angles in [0, 2*pi).
/// Applied as R = Rz(yaw) * Ry(pitch) * Rx(roll) to object vertices.
struct ViewPose {
    double roll = 0.0;  // about x
    double pitch = 0.0; // about y
    double yaw = 0.0;   // about z

    bool operator==(const ViewPose&) const = default;
};

Mat3 rotation(const ViewPose& pose);

/// Cartesian product of n uniformly spaced angles per axis over [0, 2*pi)
/// (0 included, 2*pi excluded). Ordering is roll-major, then pitch, then yaw;
/// count is n^3. n < 1 is an error.
std::vector<ViewPose> make_view_poses(int n_per_axis);

} // namespace vxc::geom
