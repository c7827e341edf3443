// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "vxc/nn/tensor.hpp"

namespace vxc::nn {

/// Geometry of a 3D convolution in its "forward" orientation: an input volume
/// of spatial size `in` producing `out` with kernel `k`, stride `s` and low
/// padding `pad_lo` per axis (high padding follows from the size law
/// out = (in + pad_lo + pad_hi - k)/s + 1). Transposed convolution reuses the
/// same geometry through the adjoint (input-gradient) kernel.
struct Conv3dGeom {
    std::array<int, 3> in{};   // D, H, W
    std::array<int, 3> out{};
    std::array<int, 3> k{};
    std::array<int, 3> stride{};
    std::array<int, 3> pad_lo{};

    /// Stride-1 "same" geometry for an even kernel (k=4 pads 1 low, 2 high).
    static Conv3dGeom same_stride1(int spatial, int kernel);
    /// Stride-2 halving geometry (k=4, pad 1/1); spatial must be even.
    static Conv3dGeom halve(int spatial, int kernel = 4);
};

// Kernels shared by the autodiff conv primitives. x is [B, Ci, D, H, W],
// w is [Co, Ci, kd, kh, kw], gy is [B, Co, od, oh, ow].
Tensor conv3d_forward_kernel(const Tensor& x, const Tensor& w, const Conv3dGeom& g);
Tensor conv3d_input_grad_kernel(const Tensor& gy, const Tensor& w, const Conv3dGeom& g);
Tensor conv3d_weight_grad_kernel(const Tensor& x, const Tensor& gy, const Conv3dGeom& g);

} // namespace vxc::nn
