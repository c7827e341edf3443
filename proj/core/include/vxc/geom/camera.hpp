// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <vector>

#include "vxc/geom/vec3.hpp"

namespace vxc::geom {

/// Virtual depth camera. Sits on the -z axis at `distance` from the origin
/// and looks toward +z with identity orientation. Defaults keep the whole
/// canonical cube [-0.5, 0.5]^3 inside the frustum with margin.
struct PinholeCamera {
    int width = 128;
    int height = 128;
    double focal = 140.0;   // pixels
    double cx = 64.0;       // principal point
    double cy = 64.0;
    double distance = 1.8;  // camera center at (0, 0, -distance)

    static PinholeCamera with_size(int w, int h, double f, double d) {
        return {w, h, f, w * 0.5, h * 0.5, d};
    }

    Vec3 center() const { return {0.0, 0.0, -distance}; }

    /// Unit direction of the ray through the center of pixel (u, v).
    Vec3 ray_direction(int u, int v) const {
        Vec3 dir{(u + 0.5 - cx) / focal, (v + 0.5 - cy) / focal, 1.0};
        return dir.normalized();
    }
};

/// Per-pixel ray depths (Euclidean distance along the unit ray). Pixels whose
/// ray misses the scene carry the non-finite sentinel.
struct DepthImage {
    int width = 0;
    int height = 0;
    std::vector<double> depth;

    static constexpr double sentinel = std::numeric_limits<double>::infinity();

    DepthImage() = default;
    DepthImage(int w, int h) : width(w), height(h), depth(static_cast<std::size_t>(w) * h, sentinel) {}

    double at(int u, int v) const { return depth[static_cast<std::size_t>(v) * width + u]; }
    void set(int u, int v, double d) { depth[static_cast<std::size_t>(v) * width + u] = d; }
    bool is_hit(int u, int v) const { return std::isfinite(at(u, v)); }

    std::size_t hit_count() const {
        std::size_t n = 0;
        for (double d : depth)
            if (std::isfinite(d)) ++n;
        return n;
    }
};

} // namespace vxc::geom
