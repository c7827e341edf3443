// SPDX-License-Identifier: Apache-2.0
#include "vxc/geom/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "vxc/error.hpp"

namespace vxc::geom {

Aabb bounding_box(const TriangleMesh& mesh) {
    if (mesh.vertices.empty()) throw EmptyGeometryError("bounding_box: mesh has no vertices");
    Aabb box{mesh.vertices[0], mesh.vertices[0]};
    for (const Vec3& v : mesh.vertices) {
        box.min = box.min.cwise_min(v);
        box.max = box.max.cwise_max(v);
    }
    return box;
}

TriangleMesh normalize_mesh(const TriangleMesh& mesh) {
    if (mesh.empty()) throw EmptyGeometryError("normalize_mesh: empty mesh");
    const Aabb box = bounding_box(mesh);
    const Vec3 ext = box.extent();
    const double longest = std::max({ext.x, ext.y, ext.z});
    if (longest <= 0.0) throw EmptyGeometryError("normalize_mesh: mesh has zero extent");
    const Vec3 center = box.center();
    const double scale = 1.0 / longest;

    TriangleMesh out;
    out.vertices.reserve(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices) out.vertices.push_back((v - center) * scale);

    out.triangles.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
        const Vec3 a = out.vertices[static_cast<std::size_t>(t[0])];
        const Vec3 b = out.vertices[static_cast<std::size_t>(t[1])];
        const Vec3 c = out.vertices[static_cast<std::size_t>(t[2])];
        if ((b - a).cross(c - a).norm() <= 1e-18) continue; // zero-area after scaling
        out.triangles.push_back(t);
    }
    if (out.triangles.empty())
        throw EmptyGeometryError("normalize_mesh: all triangles degenerate");
    return out;
}

TriangleMesh rotated(const TriangleMesh& mesh, const Mat3& rot) {
    TriangleMesh out;
    out.vertices.reserve(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices) out.vertices.push_back(rot * v);
    out.triangles = mesh.triangles;
    return out;
}

namespace {

int parse_face_index(const std::string& token, std::size_t vertex_count, int line_no) {
    const std::size_t slash = token.find('/');
    const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    int idx = 0;
    try {
        idx = std::stoi(head);
    } catch (const std::exception&) {
        throw FormatError("obj: bad face index '" + token + "' on line " +
                          std::to_string(line_no));
    }
    if (idx < 0)
        throw FormatError("obj: negative (relative) indices unsupported, line " +
                          std::to_string(line_no));
    if (idx == 0 || static_cast<std::size_t>(idx) > vertex_count)
        throw FormatError("obj: face index out of range on line " + std::to_string(line_no));
    return idx - 1;
}

} // namespace

TriangleMesh load_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open OBJ: " + path.string());
    TriangleMesh mesh;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ss >> v.x >> v.y >> v.z))
                throw FormatError("obj: bad vertex on line " + std::to_string(line_no));
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> poly;
            std::string tok;
            while (ss >> tok) poly.push_back(parse_face_index(tok, mesh.vertices.size(), line_no));
            if (poly.size() < 3)
                throw FormatError("obj: face with fewer than 3 vertices on line " +
                                  std::to_string(line_no));
            for (std::size_t i = 1; i + 1 < poly.size(); ++i)
                mesh.triangles.push_back({poly[0], poly[i], poly[i + 1]});
        }
        // All other record types are ignored.
    }
    if (mesh.empty()) throw EmptyGeometryError("obj: no geometry in " + path.string());
    return mesh;
}

void save_obj(const TriangleMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open OBJ for writing: " + path.string());
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    if (!out) throw IoError("short write: " + path.string());
}

} // namespace vxc::geom
