// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "vxc/nn/tensor.hpp"
#include "vxc/voxel/grid.hpp"

namespace vxc::nn {

/// Pack cubic grids into a [B,1,N,N,N] tensor (values widened to double).
/// All grids must share the same cubic dims.
Tensor batch_from_grids(const std::vector<voxel::OccupancyGrid>& grids);

/// Extract sample `b` of a [B,1,N,N,N] tensor as a probability grid. Values
/// are clamped into [0,1] before the float narrowing.
voxel::OccupancyGrid grid_from_batch(const Tensor& batch, int b);

} // namespace vxc::nn
