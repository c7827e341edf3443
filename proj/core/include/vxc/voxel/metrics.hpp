// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "vxc/voxel/grid.hpp"

namespace vxc::voxel {

struct MetricReport {
    double iou = 0.0;        // in [0, 1]
    double ce = 0.0;         // mean negated log-likelihood, >= 0
    std::int64_t voxel_count = 0;
};

/// Binarize a probability grid: output voxel is 1 iff input value > p
/// (strictly). p must lie in (0, 1).
OccupancyGrid threshold(const OccupancyGrid& grid, double p);

/// Intersection-over-union of threshold(pred, p) against a binary target.
/// Returns 1.0 when both sets are empty (vacuous agreement).
double iou(const OccupancyGrid& pred, const OccupancyGrid& target, double p);

/// Mean negated per-voxel log-likelihood of the binary target under the
/// predicted probabilities. Predictions are clamped to [eps, 1-eps] before
/// taking logs; eps must lie in (0, 0.5). Lower is better.
double cross_entropy(const OccupancyGrid& pred, const OccupancyGrid& target, double eps = 1e-7);

/// Both metrics in one pass.
MetricReport evaluate_pair(const OccupancyGrid& pred, const OccupancyGrid& target, double p,
                           double eps = 1e-7);

} // namespace vxc::voxel
