// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vxc/geom/mesh.hpp"
#include "vxc/voxel/grid.hpp"

namespace vxc::geom {

/// Inspection mesh: one unit cube per occupied voxel over the canonical
/// domain, with faces shared by two occupied voxels culled. Corner vertices
/// are deduplicated. An empty grid gives an empty mesh.
TriangleMesh mesh_from_grid(const voxel::OccupancyGrid& grid);

} // namespace vxc::geom
