// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "vxc/geom/vec3.hpp"

namespace vxc::geom {

/// Watertight ray-triangle intersection (shear + signed-area formulation).
/// Rays passing exactly through shared edges or vertices report a hit on at
/// least one incident triangle, so closed surfaces never leak. Computed in
/// double throughout.
class WatertightRay {
public:
    WatertightRay(const Vec3& origin, const Vec3& dir) : org_(origin) {
        // Permute axes so the largest direction component becomes z.
        int kz = 0;
        double ax = std::fabs(dir.x), ay = std::fabs(dir.y), az = std::fabs(dir.z);
        if (ay > ax && ay >= az) kz = 1;
        else if (az > ax && az >= ay) kz = 2;
        int kx = (kz + 1) % 3, ky = (kz + 2) % 3;
        if (dir[kz] < 0.0) std::swap(kx, ky); // keep winding consistent
        kx_ = kx; ky_ = ky; kz_ = kz;
        sx_ = dir[kx] / dir[kz];
        sy_ = dir[ky] / dir[kz];
        sz_ = 1.0 / dir[kz];
    }

    /// Returns true and the ray parameter t > t_min on intersection.
    bool intersect(const Vec3& v0, const Vec3& v1, const Vec3& v2, double& t,
                   double t_min = 0.0) const {
        const Vec3 a = v0 - org_, b = v1 - org_, c = v2 - org_;
        const double akz = a[kz_], bkz = b[kz_], ckz = c[kz_];
        const double ax = a[kx_] - sx_ * akz, ay = a[ky_] - sy_ * akz;
        const double bx = b[kx_] - sx_ * bkz, by = b[ky_] - sy_ * bkz;
        const double cx = c[kx_] - sx_ * ckz, cy = c[ky_] - sy_ * ckz;

        const double u = cx * by - cy * bx;
        const double v = ax * cy - ay * cx;
        const double w = bx * ay - by * ax;

        if ((u < 0.0 || v < 0.0 || w < 0.0) && (u > 0.0 || v > 0.0 || w > 0.0)) return false;
        const double det = u + v + w;
        if (det == 0.0) return false;

        const double tt = (u * sz_ * akz + v * sz_ * bkz + w * sz_ * ckz) / det;
        if (!(tt > t_min) || !std::isfinite(tt)) return false;
        t = tt;
        return true;
    }

private:
    Vec3 org_;
    int kx_ = 0, ky_ = 1, kz_ = 2;
    double sx_ = 0.0, sy_ = 0.0, sz_ = 1.0;
};

} // namespace vxc::geom
