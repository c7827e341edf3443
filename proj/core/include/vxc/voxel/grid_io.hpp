// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "vxc/voxel/grid.hpp"

namespace vxc::voxel {

// .vxg container: magic "VXGR", version byte 1, encoding byte (0 = bit-packed
// binary LSB-first within each byte, 1 = 32-bit little-endian IEEE floats),
// three 16-bit little-endian unsigned dims (nx, ny, nz), then the payload in
// the grid's z-major linearization. No padding, no trailing bytes.

void save_grid(const OccupancyGrid& grid, const std::filesystem::path& path);
OccupancyGrid load_grid(const std::filesystem::path& path);

/// Encode/decode to a byte buffer (the file body). Round trips bit-exactly.
std::vector<std::uint8_t> encode_grid(const OccupancyGrid& grid);
OccupancyGrid decode_grid(const std::uint8_t* data, std::size_t size);

} // namespace vxc::voxel
