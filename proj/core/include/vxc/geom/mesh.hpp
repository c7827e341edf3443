// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "vxc/geom/vec3.hpp"

namespace vxc::geom {

/// Indexed triangle soup. All pipeline stages assume meshes have been run
/// through normalize_mesh so they fit the canonical cube [-0.5, 0.5]^3.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    bool empty() const { return vertices.empty() || triangles.empty(); }
};

struct Aabb {
    Vec3 min, max;
    Vec3 center() const { return (min + max) * 0.5; }
    Vec3 extent() const { return max - min; }
};

Aabb bounding_box(const TriangleMesh& mesh);

/// Center the mesh at the origin and scale it so the longest bounding-box
/// edge is exactly 1. Degenerate (zero-area) triangles are dropped.
/// Throws EmptyGeometryError on empty input.
TriangleMesh normalize_mesh(const TriangleMesh& mesh);

/// Vertices transformed by a rotation about the origin.
TriangleMesh rotated(const TriangleMesh& mesh, const Mat3& rot);

/// ASCII OBJ subset: `v` and `f` records, faces fan-triangulated on load.
TriangleMesh load_obj(const std::filesystem::path& path);
void save_obj(const TriangleMesh& mesh, const std::filesystem::path& path);

} // namespace vxc::geom
