// SPDX-License-Identifier: Apache-2.0
#include "vxc/geom/pose.hpp"

#include <cmath>
#include <numbers>

#include "vxc/error.hpp"

namespace vxc::geom {

Mat3 rotation(const ViewPose& pose) {
    const double cr = std::cos(pose.roll), sr = std::sin(pose.roll);
    const double cp = std::cos(pose.pitch), sp = std::sin(pose.pitch);
    const double cy = std::cos(pose.yaw), sy = std::sin(pose.yaw);
    Mat3 rx{{1, 0, 0, 0, cr, -sr, 0, sr, cr}};
    Mat3 ry{{cp, 0, sp, 0, 1, 0, -sp, 0, cp}};
    Mat3 rz{{cy, -sy, 0, sy, cy, 0, 0, 0, 1}};
    return rz * ry * rx;
}

std::vector<ViewPose> make_view_poses(int n_per_axis) {
    if (n_per_axis < 1) throw ArgumentError("make_view_poses: n_per_axis must be >= 1");
    const double step = 2.0 * std::numbers::pi / n_per_axis;
    std::vector<ViewPose> poses;
    poses.reserve(static_cast<std::size_t>(n_per_axis) * n_per_axis * n_per_axis);
    for (int ir = 0; ir < n_per_axis; ++ir)
        for (int ip = 0; ip < n_per_axis; ++ip)
            for (int iy = 0; iy < n_per_axis; ++iy)
                poses.push_back({ir * step, ip * step, iy * step});
    return poses;
}

} // namespace vxc::geom
