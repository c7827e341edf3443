// SPDX-License-Identifier: Apache-2.0
#include "vxc/voxel/grid_io.hpp"

#include <cstring>
#include <fstream>
#include <string>

namespace vxc::voxel {

namespace {

constexpr char kMagic[4] = {'V', 'X', 'G', 'R'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 6;

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
    throw FormatError("vxg: " + what + " at byte offset " + std::to_string(offset));
}

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::uint16_t get_u16le(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (static_cast<std::uint16_t>(p[1]) << 8));
}

} // namespace

std::vector<std::uint8_t> encode_grid(const OccupancyGrid& grid) {
    const Dims3 d = grid.dims();
    if (d.nx > 0xffff || d.ny > 0xffff || d.nz > 0xffff)
        throw ArgumentError("vxg dims exceed 16-bit range");
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + grid.voxel_count() * 4);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(grid.kind()));
    put_u16le(out, static_cast<std::uint16_t>(d.nx));
    put_u16le(out, static_cast<std::uint16_t>(d.ny));
    put_u16le(out, static_cast<std::uint16_t>(d.nz));

    auto vals = grid.values();
    if (grid.kind() == GridKind::binary) {
        const std::size_t nbytes = (vals.size() + 7) / 8;
        out.resize(kHeaderSize + nbytes, 0);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (vals[i] != 0.0f) out[kHeaderSize + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    } else {
        static_assert(sizeof(float) == 4);
        out.resize(kHeaderSize + vals.size() * 4);
        // Little-endian host assumed for the direct memcpy; asserted below.
        const std::uint32_t probe = 1;
        if (*reinterpret_cast<const std::uint8_t*>(&probe) != 1)
            throw FormatError("vxg: big-endian hosts are not supported");
        std::memcpy(out.data() + kHeaderSize, vals.data(), vals.size() * 4);
    }
    return out;
}

OccupancyGrid decode_grid(const std::uint8_t* data, std::size_t size) {
    if (size < kHeaderSize) fail("truncated header", size);
    if (std::memcmp(data, kMagic, 4) != 0) fail("bad magic bytes", 0);
    if (data[4] != kVersion)
        fail("unsupported version " + std::to_string(int(data[4])), 4);
    const std::uint8_t enc = data[5];
    if (enc > 1) fail("unknown encoding byte " + std::to_string(int(enc)), 5);
    const Dims3 d{get_u16le(data + 6), get_u16le(data + 8), get_u16le(data + 10)};
    if (d.nx == 0 || d.ny == 0 || d.nz == 0) fail("zero dimension", 6);
    const std::size_t n = d.count();

    std::vector<float> vals(n);
    if (enc == 0) {
        const std::size_t nbytes = (n + 7) / 8;
        if (size < kHeaderSize + nbytes) fail("truncated binary payload", size);
        if (size > kHeaderSize + nbytes) fail("trailing bytes", kHeaderSize + nbytes);
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = (data[kHeaderSize + i / 8] >> (i % 8)) & 1u ? 1.0f : 0.0f;
        return OccupancyGrid(d, GridKind::binary, std::move(vals));
    }
    if (size < kHeaderSize + n * 4) fail("truncated float payload", size);
    if (size > kHeaderSize + n * 4) fail("trailing bytes", kHeaderSize + n * 4);
    std::memcpy(vals.data(), data + kHeaderSize, n * 4);
    return OccupancyGrid(d, GridKind::probability, std::move(vals));
}

void save_grid(const OccupancyGrid& grid, const std::filesystem::path& path) {
    const auto bytes = encode_grid(grid);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write: " + path.string());
}

OccupancyGrid load_grid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    const auto size = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    std::vector<std::uint8_t> bytes(size);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size));
    if (!in) throw IoError("short read: " + path.string());
    return decode_grid(bytes.data(), bytes.size());
}

} // namespace vxc::voxel
