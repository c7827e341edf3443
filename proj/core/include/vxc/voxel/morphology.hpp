// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vxc/voxel/grid.hpp"

namespace vxc::voxel {

/// Grow the occupied set of a binary grid by the given Chebyshev radius.
/// Radius 0 returns the input unchanged.
OccupancyGrid dilate(const OccupancyGrid& grid, int radius);

/// True when every occupied voxel of `inner` is occupied in `outer`.
bool contains(const OccupancyGrid& outer, const OccupancyGrid& inner);

/// Fraction of `inner`'s occupied voxels that are occupied in `outer`.
/// Returns 1.0 when `inner` is empty.
double containment_fraction(const OccupancyGrid& outer, const OccupancyGrid& inner);

} // namespace vxc::voxel
