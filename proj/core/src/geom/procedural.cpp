// SPDX-License-Identifier: Apache-2.0
#include "vxc/geom/procedural.hpp"

#include "vxc/error.hpp"
#include "vxc/util/rng.hpp"

namespace vxc::geom {

ProceduralKind procedural_kind_from_string(const std::string& name) {
    if (name == "box") return ProceduralKind::box;
    if (name == "table") return ProceduralKind::table;
    if (name == "chair") return ProceduralKind::chair;
    if (name == "stool") return ProceduralKind::stool;
    throw ArgumentError("unknown procedural mesh kind: " + name);
}

std::string to_string(ProceduralKind kind) {
    switch (kind) {
        case ProceduralKind::box: return "box";
        case ProceduralKind::table: return "table";
        case ProceduralKind::chair: return "chair";
        case ProceduralKind::stool: return "stool";
    }
    return "?";
}

namespace {

/// Append an axis-aligned cuboid spanning [lo, hi].
void add_cuboid(TriangleMesh& mesh, const Vec3& lo, const Vec3& hi) {
    const int base = static_cast<int>(mesh.vertices.size());
    for (int corner = 0; corner < 8; ++corner)
        mesh.vertices.push_back({corner & 1 ? hi.x : lo.x, corner & 2 ? hi.y : lo.y,
                                 corner & 4 ? hi.z : lo.z});
    // Two triangles per face, outward winding.
    static constexpr int kFaces[12][3] = {
        {0, 2, 1}, {1, 2, 3}, // z = lo
        {4, 5, 6}, {5, 7, 6}, // z = hi
        {0, 1, 4}, {1, 5, 4}, // y = lo
        {2, 6, 3}, {3, 6, 7}, // y = hi
        {0, 4, 2}, {2, 4, 6}, // x = lo
        {1, 3, 5}, {3, 7, 5}, // x = hi
    };
    for (const auto& f : kFaces)
        mesh.triangles.push_back({base + f[0], base + f[1], base + f[2]});
}

void add_legs(TriangleMesh& mesh, const ProceduralParams& p, double top_y) {
    const double t = p.leg_thickness;
    const double x0 = -p.width / 2, x1 = p.width / 2;
    const double z0 = -p.depth / 2, z1 = p.depth / 2;
    add_cuboid(mesh, {x0, 0, z0}, {x0 + t, top_y, z0 + t});
    add_cuboid(mesh, {x1 - t, 0, z0}, {x1, top_y, z0 + t});
    add_cuboid(mesh, {x0, 0, z1 - t}, {x0 + t, top_y, z1});
    add_cuboid(mesh, {x1 - t, 0, z1 - t}, {x1, top_y, z1});
}

void check_positive(const ProceduralParams& p, ProceduralKind kind) {
    auto req = [](double v, const char* name) {
        if (!(v > 0.0)) throw ArgumentError(std::string("procedural mesh: ") + name +
                                            " must be positive");
    };
    req(p.width, "width");
    req(p.depth, "depth");
    req(p.height, "height");
    if (kind != ProceduralKind::box) {
        req(p.slab_thickness, "slab_thickness");
        req(p.leg_thickness, "leg_thickness");
        req(p.seat_height, "seat_height");
    }
    if (kind == ProceduralKind::chair) {
        req(p.back_thickness, "back_thickness");
        req(p.back_height, "back_height");
    }
}

} // namespace

TriangleMesh make_procedural_mesh(ProceduralKind kind, const ProceduralParams& p) {
    check_positive(p, kind);
    TriangleMesh mesh;
    const double x0 = -p.width / 2, x1 = p.width / 2;
    const double z0 = -p.depth / 2, z1 = p.depth / 2;
    switch (kind) {
        case ProceduralKind::box:
            add_cuboid(mesh, {x0, -p.height / 2, z0}, {x1, p.height / 2, z1});
            break;
        case ProceduralKind::table:
            add_cuboid(mesh, {x0, p.height - p.slab_thickness, z0}, {x1, p.height, z1});
            add_legs(mesh, p, p.height - p.slab_thickness);
            break;
        case ProceduralKind::stool:
            add_cuboid(mesh, {x0, p.seat_height - p.slab_thickness, z0}, {x1, p.seat_height, z1});
            add_legs(mesh, p, p.seat_height - p.slab_thickness);
            break;
        case ProceduralKind::chair:
            add_cuboid(mesh, {x0, p.seat_height - p.slab_thickness, z0}, {x1, p.seat_height, z1});
            add_legs(mesh, p, p.seat_height - p.slab_thickness);
            add_cuboid(mesh, {x0, p.seat_height, z0},
                       {x1, p.seat_height + p.back_height, z0 + p.back_thickness});
            break;
    }
    return mesh;
}

ProceduralParams randomized_params(ProceduralKind kind, std::mt19937_64& rng) {
    ProceduralParams p;
    auto jitter = [&](double v) { return v * util::uniform(rng, 0.75, 1.25); };
    p.width = jitter(p.width);
    p.depth = jitter(p.depth);
    p.height = jitter(p.height);
    p.slab_thickness = jitter(p.slab_thickness);
    p.leg_thickness = jitter(p.leg_thickness);
    p.seat_height = jitter(p.seat_height);
    if (kind == ProceduralKind::chair) {
        p.back_thickness = jitter(p.back_thickness);
        p.back_height = jitter(p.back_height);
    }
    return p;
}

} // namespace vxc::geom
