// SPDX-License-Identifier: Apache-2.0
#include "vxc/voxel/morphology.hpp"

#include <algorithm>

namespace vxc::voxel {

namespace {

OccupancyGrid dilate_once(const OccupancyGrid& grid) {
    const Dims3 d = grid.dims();
    OccupancyGrid out(d, GridKind::binary);
    auto ov = out.mutable_values();
    for (int iz = 0; iz < d.nz; ++iz)
        for (int iy = 0; iy < d.ny; ++iy)
            for (int ix = 0; ix < d.nx; ++ix) {
                if (grid.at(ix, iy, iz) == 0.0f) continue;
                const int z0 = std::max(iz - 1, 0), z1 = std::min(iz + 1, d.nz - 1);
                const int y0 = std::max(iy - 1, 0), y1 = std::min(iy + 1, d.ny - 1);
                const int x0 = std::max(ix - 1, 0), x1 = std::min(ix + 1, d.nx - 1);
                for (int z = z0; z <= z1; ++z)
                    for (int y = y0; y <= y1; ++y)
                        for (int x = x0; x <= x1; ++x) ov[out.index(x, y, z)] = 1.0f;
            }
    return out;
}

} // namespace

OccupancyGrid dilate(const OccupancyGrid& grid, int radius) {
    if (grid.kind() != GridKind::binary) throw KindError("dilate expects a binary grid");
    if (radius < 0) throw ArgumentError("dilate radius must be non-negative");
    OccupancyGrid out = grid;
    // r chained unit dilations equal one Chebyshev-radius-r dilation.
    for (int r = 0; r < radius; ++r) out = dilate_once(out);
    return out;
}

bool contains(const OccupancyGrid& outer, const OccupancyGrid& inner) {
    return containment_fraction(outer, inner) == 1.0;
}

double containment_fraction(const OccupancyGrid& outer, const OccupancyGrid& inner) {
    if (!(outer.dims() == inner.dims())) throw ShapeError("containment: dims mismatch");
    auto ov = outer.values();
    auto iv = inner.values();
    std::size_t total = 0, inside = 0;
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv[i] == 0.0f) continue;
        ++total;
        if (ov[i] != 0.0f) ++inside;
    }
    if (total == 0) return 1.0;
    return static_cast<double>(inside) / static_cast<double>(total);
}

} // namespace vxc::voxel
