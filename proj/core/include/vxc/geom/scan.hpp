// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vxc/geom/camera.hpp"
#include "vxc/geom/mesh.hpp"
#include "vxc/geom/pose.hpp"
#include "vxc/voxel/grid.hpp"

namespace vxc::geom {

/// Map a coordinate in [-0.5, 0.5] to its cell index in an n-cell axis:
/// index = floor((c + 0.5) * n), with c == +0.5 assigned to n-1. Returns
/// false for coordinates outside the closed interval.
inline bool map_to_cell(double c, int n, int& idx) {
    if (c < -0.5 || c > 0.5) return false;
    int i = static_cast<int>(std::floor((c + 0.5) * n));
    if (i >= n) i = n - 1;
    if (i < 0) i = 0;
    idx = i;
    return true;
}

/// Ray-cast depth scan of the posed mesh. Every pixel holds the distance to
/// the nearest triangle along its ray, or the sentinel on a miss.
DepthImage render_depth(const TriangleMesh& mesh, const ViewPose& pose,
                        const PinholeCamera& camera);

/// Back-project every hit pixel to a surface point (in the posed-object
/// frame, which equals the camera/world frame under the object-rotation
/// convention) and mark the enclosing voxel of an N^3 grid over
/// [-0.5, 0.5]^3. Points outside the cube are discarded.
voxel::OccupancyGrid depth_to_partial_grid(const DepthImage& depth, const ViewPose& pose,
                                           const PinholeCamera& camera, int resolution);

/// Mark every voxel intersected by the posed mesh surface. Triangles are
/// point-sampled on a barycentric lattice with pitch 0.4 voxel edges;
/// samples outside the cube are discarded.
voxel::OccupancyGrid voxelize_surface(const TriangleMesh& mesh, const ViewPose& pose,
                                      int resolution);

/// Complement of the exterior flood fill (6-connected, seeded from the grid
/// boundary): closed shells come back with their cavities filled. The input
/// surface is always contained in the output.
voxel::OccupancyGrid fill_solid(const voxel::OccupancyGrid& surface);

} // namespace vxc::geom
