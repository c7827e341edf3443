// SPDX-License-Identifier: Apache-2.0
#include "vxc/geom/scan.hpp"

#include <algorithm>
#include <queue>

#include "vxc/error.hpp"
#include "vxc/geom/ray.hpp"

namespace vxc::geom {

using voxel::Dims3;
using voxel::GridKind;
using voxel::OccupancyGrid;

DepthImage render_depth(const TriangleMesh& mesh, const ViewPose& pose,
                        const PinholeCamera& camera) {
    if (camera.focal <= 0.0) throw ArgumentError("render_depth: focal length must be positive");
    if (camera.width <= 0 || camera.height <= 0)
        throw ArgumentError("render_depth: image size must be positive");

    const TriangleMesh posed = rotated(mesh, rotation(pose));
    DepthImage img(camera.width, camera.height);
    const Vec3 org = camera.center();

    for (int v = 0; v < camera.height; ++v) {
        for (int u = 0; u < camera.width; ++u) {
            const Vec3 dir = camera.ray_direction(u, v);
            const WatertightRay ray(org, dir);
            double best = DepthImage::sentinel;
            for (const auto& tri : posed.triangles) {
                double t;
                if (ray.intersect(posed.vertices[static_cast<std::size_t>(tri[0])],
                                  posed.vertices[static_cast<std::size_t>(tri[1])],
                                  posed.vertices[static_cast<std::size_t>(tri[2])], t) &&
                    t < best)
                    best = t;
            }
            if (std::isfinite(best)) img.set(u, v, best);
        }
    }
    return img;
}

OccupancyGrid depth_to_partial_grid(const DepthImage& depth, const ViewPose& pose,
                                    const PinholeCamera& camera, int resolution) {
    if (resolution < 4) throw ArgumentError("depth_to_partial_grid: resolution must be >= 4");
    (void)pose; // the posed-object frame is the camera frame; kept for interface symmetry
    OccupancyGrid grid(Dims3::cube(resolution), GridKind::binary);
    auto vals = grid.mutable_values();
    const Vec3 org = camera.center();
    for (int v = 0; v < depth.height; ++v) {
        for (int u = 0; u < depth.width; ++u) {
            const double t = depth.at(u, v);
            if (!std::isfinite(t)) continue;
            const Vec3 p = org + t * camera.ray_direction(u, v);
            int ix, iy, iz;
            if (map_to_cell(p.x, resolution, ix) && map_to_cell(p.y, resolution, iy) &&
                map_to_cell(p.z, resolution, iz))
                vals[grid.index(ix, iy, iz)] = 1.0f;
        }
    }
    return grid;
}

OccupancyGrid voxelize_surface(const TriangleMesh& mesh, const ViewPose& pose, int resolution) {
    if (resolution < 1) throw ArgumentError("voxelize_surface: resolution must be positive");
    OccupancyGrid grid(Dims3::cube(resolution), GridKind::binary);
    if (mesh.empty()) return grid;
    auto vals = grid.mutable_values();

    const TriangleMesh posed = rotated(mesh, rotation(pose));
    const double pitch = 0.4 / resolution; // 0.4 voxel edges

    for (const auto& tri : posed.triangles) {
        const Vec3 a = posed.vertices[static_cast<std::size_t>(tri[0])];
        const Vec3 b = posed.vertices[static_cast<std::size_t>(tri[1])];
        const Vec3 c = posed.vertices[static_cast<std::size_t>(tri[2])];
        const Vec3 e1 = b - a, e2 = c - a;
        const double longest = std::max({e1.norm(), e2.norm(), (e2 - e1).norm()});
        const int n = std::max(1, static_cast<int>(std::ceil(longest / pitch)));
        const double inv = 1.0 / n;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n - i; ++j) {
                const Vec3 p = a + e1 * (i * inv) + e2 * (j * inv);
                int ix, iy, iz;
                if (map_to_cell(p.x, resolution, ix) && map_to_cell(p.y, resolution, iy) &&
                    map_to_cell(p.z, resolution, iz))
                    vals[grid.index(ix, iy, iz)] = 1.0f;
            }
        }
    }
    return grid;
}

OccupancyGrid fill_solid(const OccupancyGrid& surface) {
    if (surface.kind() != GridKind::binary) throw KindError("fill_solid expects a binary grid");
    const Dims3 d = surface.dims();
    std::vector<std::uint8_t> exterior(surface.voxel_count(), 0);
    std::queue<std::array<int, 3>> frontier;

    auto try_seed = [&](int x, int y, int z) {
        const std::size_t i = surface.index(x, y, z);
        if (surface.values()[i] == 0.0f && !exterior[i]) {
            exterior[i] = 1;
            frontier.push({x, y, z});
        }
    };
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (x == 0 || y == 0 || z == 0 || x == d.nx - 1 || y == d.ny - 1 || z == d.nz - 1)
                    try_seed(x, y, z);

    static constexpr int kSteps[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                         {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    while (!frontier.empty()) {
        const auto [x, y, z] = frontier.front();
        frontier.pop();
        for (const auto& s : kSteps) {
            const int nx = x + s[0], ny = y + s[1], nz = z + s[2];
            if (!surface.in_bounds(nx, ny, nz)) continue;
            try_seed(nx, ny, nz);
        }
    }

    OccupancyGrid out(d, GridKind::binary);
    auto ov = out.mutable_values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = exterior[i] ? 0.0f : 1.0f;
    return out;
}

} // namespace vxc::geom
