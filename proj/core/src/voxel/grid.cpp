// SPDX-License-Identifier: Apache-2.0
#include "vxc/voxel/grid.hpp"

#include <cmath>
#include <string>

namespace vxc::voxel {

void check_value(GridKind kind, float v) {
    if (std::isnan(v)) throw ArgumentError("grid value is NaN");
    if (kind == GridKind::binary) {
        if (v != 0.0f && v != 1.0f)
            throw ArgumentError("binary grid value must be 0 or 1, got " + std::to_string(v));
    } else {
        if (v < 0.0f || v > 1.0f)
            throw ArgumentError("probability grid value must lie in [0,1], got " +
                                std::to_string(v));
    }
}

OccupancyGrid::OccupancyGrid(Dims3 dims, GridKind kind) : dims_(dims), kind_(kind) {
    if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
        throw ArgumentError("grid dims must be positive");
    values_.assign(dims.count(), 0.0f);
}

OccupancyGrid::OccupancyGrid(Dims3 dims, GridKind kind, std::vector<float> values)
    : dims_(dims), kind_(kind), values_(std::move(values)) {
    if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
        throw ArgumentError("grid dims must be positive");
    if (values_.size() != dims.count())
        throw ShapeError("value buffer length " + std::to_string(values_.size()) +
                         " does not match dims product " + std::to_string(dims.count()));
    for (float v : values_) check_value(kind_, v);
}

void OccupancyGrid::set(int ix, int iy, int iz, float v) {
    check_value(kind_, v);
    values_[index(ix, iy, iz)] = v;
}

std::size_t OccupancyGrid::occupied_count(float above) const {
    std::size_t n = 0;
    for (float v : values_)
        if (v > above) ++n;
    return n;
}

OccupancyGrid OccupancyGrid::as_probability() const {
    return OccupancyGrid(dims_, GridKind::probability, values_);
}

} // namespace vxc::voxel
