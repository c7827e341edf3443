// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vxc/error.hpp"

namespace vxc::voxel {

enum class GridKind : std::uint8_t {
    binary = 0,      // values are exactly 0 or 1
    probability = 1, // values lie in [0, 1]
};

struct Dims3 {
    int nx = 0, ny = 0, nz = 0;

    bool operator==(const Dims3&) const = default;
    std::size_t count() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nz);
    }
    static Dims3 cube(int n) { return {n, n, n}; }
};

/// Dense occupancy grid over a regular lattice. Values are stored as 32-bit
/// floats in a fixed z-major linearization (x fastest, then y, then z), which
/// is also the on-disk payload order. Grids are treated as immutable values
/// once filled; every operation on them is a pure function.
class OccupancyGrid {
public:
    OccupancyGrid(Dims3 dims, GridKind kind);
    OccupancyGrid(Dims3 dims, GridKind kind, std::vector<float> values);

    static OccupancyGrid binary(Dims3 dims) { return {dims, GridKind::binary}; }
    static OccupancyGrid probability(Dims3 dims) { return {dims, GridKind::probability}; }

    GridKind kind() const { return kind_; }
    Dims3 dims() const { return dims_; }
    std::size_t voxel_count() const { return values_.size(); }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * dims_.ny + static_cast<std::size_t>(iy)) *
                   dims_.nx +
               static_cast<std::size_t>(ix);
    }
    bool in_bounds(int ix, int iy, int iz) const {
        return ix >= 0 && iy >= 0 && iz >= 0 && ix < dims_.nx && iy < dims_.ny && iz < dims_.nz;
    }

    float at(int ix, int iy, int iz) const { return values_[index(ix, iy, iz)]; }
    void set(int ix, int iy, int iz, float v);

    std::span<const float> values() const { return values_; }
    std::span<float> mutable_values() { return values_; }

    std::size_t occupied_count(float above = 0.5f) const;

    /// Reinterpret a binary grid as probabilities (0/1 are valid probabilities).
    OccupancyGrid as_probability() const;

    bool operator==(const OccupancyGrid& other) const = default;

private:
    Dims3 dims_;
    GridKind kind_;
    std::vector<float> values_;
};

/// Validates that a value is legal for the kind; throws ArgumentError.
void check_value(GridKind kind, float v);

} // namespace vxc::voxel
