// SPDX-License-Identifier: Apache-2.0
#include "vxc/geom/export.hpp"

#include <map>
#include <tuple>

namespace vxc::geom {

using voxel::OccupancyGrid;

TriangleMesh mesh_from_grid(const OccupancyGrid& grid) {
    if (grid.kind() != voxel::GridKind::binary)
        throw KindError("mesh_from_grid expects a binary grid (threshold first)");
    const auto d = grid.dims();
    const double sx = 1.0 / d.nx, sy = 1.0 / d.ny, sz = 1.0 / d.nz;

    TriangleMesh mesh;
    std::map<std::tuple<int, int, int>, int> corner_ids;
    auto corner = [&](int cx, int cy, int cz) {
        auto [it, inserted] = corner_ids.try_emplace({cx, cy, cz},
                                                     static_cast<int>(mesh.vertices.size()));
        if (inserted)
            mesh.vertices.push_back({-0.5 + cx * sx, -0.5 + cy * sy, -0.5 + cz * sz});
        return it->second;
    };

    // Faces between an occupied voxel and an empty (or out-of-grid) neighbor.
    // Quad corners wind outward; each quad becomes two triangles.
    struct Face {
        int dx, dy, dz;       // neighbor offset
        int quad[4][3];       // corner offsets relative to the voxel's low corner
    };
    static constexpr Face kFaces[6] = {
        {-1, 0, 0, {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}}},
        {+1, 0, 0, {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}}},
        {0, -1, 0, {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}}},
        {0, +1, 0, {{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}}},
        {0, 0, -1, {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}}},
        {0, 0, +1, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}},
    };

    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                if (grid.at(x, y, z) == 0.0f) continue;
                for (const Face& f : kFaces) {
                    const int nx = x + f.dx, ny = y + f.dy, nz = z + f.dz;
                    if (grid.in_bounds(nx, ny, nz) && grid.at(nx, ny, nz) != 0.0f)
                        continue; // shared face, culled
                    int ids[4];
                    for (int i = 0; i < 4; ++i)
                        ids[i] = corner(x + f.quad[i][0], y + f.quad[i][1], z + f.quad[i][2]);
                    mesh.triangles.push_back({ids[0], ids[1], ids[2]});
                    mesh.triangles.push_back({ids[0], ids[2], ids[3]});
                }
            }
    return mesh;
}

} // namespace vxc::geom
