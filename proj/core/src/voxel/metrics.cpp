// SPDX-License-Identifier: Apache-2.0
#include "vxc/voxel/metrics.hpp"

#include <cmath>
#include <string>

namespace vxc::voxel {

namespace {

void require_same_dims(const OccupancyGrid& a, const OccupancyGrid& b) {
    if (!(a.dims() == b.dims()))
        throw ShapeError("grid dims mismatch: " + std::to_string(a.dims().nx) + "^3-style vs " +
                         std::to_string(b.dims().nx) + " (nx shown)");
}

void require_prob_pred_binary_target(const OccupancyGrid& pred, const OccupancyGrid& target) {
    if (pred.kind() != GridKind::probability)
        throw KindError("prediction grid must be a probability grid");
    if (target.kind() != GridKind::binary)
        throw KindError("target grid must be a binary grid");
}

} // namespace

OccupancyGrid threshold(const OccupancyGrid& grid, double p) {
    if (grid.kind() != GridKind::probability)
        throw KindError("threshold expects a probability grid");
    if (!(p > 0.0 && p < 1.0))
        throw ArgumentError("threshold p must lie in (0,1), got " + std::to_string(p));
    std::vector<float> out(grid.voxel_count());
    auto in = grid.values();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (static_cast<double>(in[i]) > p) ? 1.0f : 0.0f;
    return OccupancyGrid(grid.dims(), GridKind::binary, std::move(out));
}

double iou(const OccupancyGrid& pred, const OccupancyGrid& target, double p) {
    require_same_dims(pred, target);
    require_prob_pred_binary_target(pred, target);
    if (!(p > 0.0 && p < 1.0))
        throw ArgumentError("threshold p must lie in (0,1), got " + std::to_string(p));
    auto pv = pred.values();
    auto tv = target.values();
    std::int64_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
        const bool a = static_cast<double>(pv[i]) > p;
        const bool b = tv[i] != 0.0f;
        inter += (a && b) ? 1 : 0;
        uni += (a || b) ? 1 : 0;
    }
    if (uni == 0) return 1.0; // both empty: vacuously perfect agreement
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double cross_entropy(const OccupancyGrid& pred, const OccupancyGrid& target, double eps) {
    require_same_dims(pred, target);
    require_prob_pred_binary_target(pred, target);
    if (!(eps > 0.0 && eps < 0.5))
        throw ArgumentError("clamp eps must lie in (0,0.5), got " + std::to_string(eps));
    auto pv = pred.values();
    auto tv = target.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
        double q = static_cast<double>(pv[i]);
        q = q < eps ? eps : (q > 1.0 - eps ? 1.0 - eps : q);
        const double y = static_cast<double>(tv[i]);
        acc -= y * std::log(q) + (1.0 - y) * std::log(1.0 - q);
    }
    return acc / static_cast<double>(pv.size());
}

MetricReport evaluate_pair(const OccupancyGrid& pred, const OccupancyGrid& target, double p,
                           double eps) {
    MetricReport r;
    r.iou = iou(pred, target, p);
    r.ce = cross_entropy(pred, target, eps);
    r.voxel_count = static_cast<std::int64_t>(pred.voxel_count());
    return r;
}

} // namespace vxc::voxel
