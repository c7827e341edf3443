// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/bridge.hpp"

#include <algorithm>

namespace vxc::nn {

Tensor batch_from_grids(const std::vector<voxel::OccupancyGrid>& grids) {
    if (grids.empty()) throw ArgumentError("batch_from_grids: empty batch");
    const auto d = grids[0].dims();
    if (d.nx != d.ny || d.ny != d.nz)
        throw ShapeError("batch_from_grids: grids must be cubic");
    const int n = d.nx;
    Tensor t(Shape{static_cast<int>(grids.size()), 1, n, n, n});
    std::size_t o = 0;
    for (const auto& g : grids) {
        if (!(g.dims() == d)) throw ShapeError("batch_from_grids: mixed grid dims");
        for (float v : g.values()) t[o++] = static_cast<double>(v);
    }
    return t;
}

voxel::OccupancyGrid grid_from_batch(const Tensor& batch, int b) {
    if (batch.ndim() != 5 || batch.dim(1) != 1)
        throw ShapeError("grid_from_batch: expected [B,1,D,H,W]");
    if (b < 0 || b >= batch.dim(0)) throw ArgumentError("grid_from_batch: batch index");
    const int n = batch.dim(2);
    const std::size_t per = static_cast<std::size_t>(n) * batch.dim(3) * batch.dim(4);
    std::vector<float> vals(per);
    const double* src = batch.data() + static_cast<std::size_t>(b) * per;
    for (std::size_t i = 0; i < per; ++i)
        vals[i] = static_cast<float>(std::clamp(src[i], 0.0, 1.0));
    return voxel::OccupancyGrid({batch.dim(4), batch.dim(3), n}, voxel::GridKind::probability,
                                std::move(vals));
}

} // namespace vxc::nn
