// SPDX-License-Identifier: Apache-2.0
//
// Test-side oracles. These deliberately re-derive results through routes
// independent of the library implementation (plain per-voxel enumeration,
// separating-axis overlap tests, finite differences) so the two paths check
// each other.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "vxc/geom/mesh.hpp"
#include "vxc/geom/vec3.hpp"
#include "vxc/nn/autodiff.hpp"
#include "vxc/voxel/grid.hpp"

namespace oracle {

// ---- brute-force voxel metrics ----

inline double brute_iou(const vxc::voxel::OccupancyGrid& pred,
                        const vxc::voxel::OccupancyGrid& target, double p) {
    const auto d = pred.dims();
    long long inter = 0, uni = 0;
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                const int a = pred.at(x, y, z) > p ? 1 : 0;
                const int b = target.at(x, y, z) != 0.0f ? 1 : 0;
                inter += a * b;
                uni += (a + b) > 0 ? 1 : 0;
            }
    if (uni == 0) return 1.0;
    return double(inter) / double(uni);
}

inline double brute_cross_entropy(const vxc::voxel::OccupancyGrid& pred,
                                  const vxc::voxel::OccupancyGrid& target, double eps) {
    const auto d = pred.dims();
    double sum = 0.0;
    long long n = 0;
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                double q = pred.at(x, y, z);
                if (q < eps) q = eps;
                if (q > 1.0 - eps) q = 1.0 - eps;
                const double t = target.at(x, y, z);
                sum += -(t * std::log(q) + (1.0 - t) * std::log(1.0 - q));
                ++n;
            }
    return sum / double(n);
}

// ---- exact triangle / axis-aligned-box overlap (separating axes) ----

namespace detail {

inline void axis_test(double a, double b, double& lo, double& hi) {
    lo = std::fmin(a, b);
    hi = std::fmax(a, b);
}

} // namespace detail

/// Closed-box semantics: touching counts as overlap.
inline bool tri_box_overlap(const vxc::geom::Vec3& center, const vxc::geom::Vec3& half,
                            vxc::geom::Vec3 a, vxc::geom::Vec3 b, vxc::geom::Vec3 c) {
    using vxc::geom::Vec3;
    a = a - center;
    b = b - center;
    c = c - center;

    // 1. box axes
    for (int i = 0; i < 3; ++i) {
        const double lo = std::fmin(a[i], std::fmin(b[i], c[i]));
        const double hi = std::fmax(a[i], std::fmax(b[i], c[i]));
        const double h = i == 0 ? half.x : (i == 1 ? half.y : half.z);
        if (lo > h || hi < -h) return false;
    }
    // 2. triangle normal
    const Vec3 e0 = b - a, e1 = c - b, e2 = a - c;
    const Vec3 n = e0.cross(e1);
    {
        const double d = n.dot(a);
        const double r =
            half.x * std::fabs(n.x) + half.y * std::fabs(n.y) + half.z * std::fabs(n.z);
        if (d > r || d < -r) return false;
    }
    // 3. nine cross-product axes
    const Vec3 edges[3] = {e0, e1, e2};
    for (const Vec3& e : edges) {
        const Vec3 axes[3] = {{0, -e.z, e.y}, {e.z, 0, -e.x}, {-e.y, e.x, 0}};
        for (const Vec3& ax : axes) {
            const double pa = ax.dot(a), pb = ax.dot(b), pc = ax.dot(c);
            const double lo = std::fmin(pa, std::fmin(pb, pc));
            const double hi = std::fmax(pa, std::fmax(pb, pc));
            const double r = half.x * std::fabs(ax.x) + half.y * std::fabs(ax.y) +
                             half.z * std::fabs(ax.z);
            if (lo > r || hi < -r) return false;
        }
    }
    return true;
}

/// Exact surface voxelization over the canonical cube via the SAT test.
inline vxc::voxel::OccupancyGrid exact_voxelize(const vxc::geom::TriangleMesh& posed_mesh,
                                                int n) {
    using namespace vxc;
    voxel::OccupancyGrid grid(voxel::Dims3::cube(n), voxel::GridKind::binary);
    const double cell = 1.0 / n;
    for (const auto& tri : posed_mesh.triangles) {
        const auto& a = posed_mesh.vertices[std::size_t(tri[0])];
        const auto& b = posed_mesh.vertices[std::size_t(tri[1])];
        const auto& c = posed_mesh.vertices[std::size_t(tri[2])];
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    const geom::Vec3 center{-0.5 + (x + 0.5) * cell, -0.5 + (y + 0.5) * cell,
                                            -0.5 + (z + 0.5) * cell};
                    const geom::Vec3 half{cell / 2, cell / 2, cell / 2};
                    if (tri_box_overlap(center, half, a, b, c)) grid.set(x, y, z, 1.0f);
                }
    }
    return grid;
}

// ---- finite differences ----

/// Max relative error between an analytic gradient and central differences
/// of `eval` taken through the raw storage of `leaf`. Checks every entry
/// when the tensor is small, otherwise a deterministic random sample.
inline double max_grad_rel_err(const std::function<double()>& eval, vxc::nn::Variable leaf,
                               const vxc::nn::Tensor& analytic, double h = 1e-5,
                               std::size_t max_checks = 400, std::uint64_t seed = 7) {
    auto& t = leaf.mutable_value();
    std::vector<std::size_t> picks;
    if (t.numel() <= max_checks) {
        for (std::size_t i = 0; i < t.numel(); ++i) picks.push_back(i);
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < max_checks; ++i)
            picks.push_back(static_cast<std::size_t>(rng() % t.numel()));
    }
    double worst = 0.0;
    for (std::size_t k : picks) {
        const double orig = t[k];
        t[k] = orig + h;
        const double fp = eval();
        t[k] = orig - h;
        const double fm = eval();
        t[k] = orig;
        const double fd = (fp - fm) / (2.0 * h);
        const double an = analytic[k];
        const double denom = std::fmax(std::fmax(std::fabs(fd), std::fabs(an)), 1e-6);
        worst = std::fmax(worst, std::fabs(fd - an) / denom);
    }
    return worst;
}

} // namespace oracle
