// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "vxc/nn/conv3d.hpp"
#include "vxc/nn/tensor.hpp"

namespace vxc::nn {

class Variable;

/// Emits gradient contributions for each parent given the upstream gradient.
/// Slots whose `needed` flag is false may be left default-constructed.
using BackwardFn =
    std::function<std::vector<Variable>(const Variable& gy, const std::vector<bool>& needed)>;

struct Node {
    Tensor value;
    bool requires_grad = false;
    std::vector<Variable> parents;
    BackwardFn backward;
    const char* op = "leaf";
};

/// Handle to a node of the define-by-run graph. Backward functions are
/// composed from these same tracked operations, so gradients are themselves
/// differentiable (the critic's gradient penalty needs grad-of-grad).
class Variable {
public:
    Variable() = default;
    explicit Variable(std::shared_ptr<Node> n) : node_(std::move(n)) {}

    static Variable constant(Tensor t);
    static Variable parameter(Tensor t);

    bool defined() const { return static_cast<bool>(node_); }
    const Tensor& value() const { return node_->value; }
    Tensor& mutable_value() { return node_->value; }
    const Shape& shape() const { return node_->value.shape(); }
    bool requires_grad() const { return node_ && node_->requires_grad; }
    double scalar() const { return node_->value[0]; }

    std::shared_ptr<Node> node() const { return node_; }

private:
    std::shared_ptr<Node> node_;
};

/// While alive, newly built operations do not record parents or backward
/// functions (pure inference mode). Thread-local.
class NoGradGuard {
public:
    NoGradGuard();
    ~NoGradGuard();
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;

private:
    bool prev_;
};

bool grad_enabled();

// ---- elementwise & scalar ----
Variable add(const Variable& a, const Variable& b);
Variable sub(const Variable& a, const Variable& b);
Variable mul(const Variable& a, const Variable& b);
Variable div(const Variable& a, const Variable& b);
Variable scale(const Variable& a, double s);
Variable add_scalar(const Variable& a, double s);
Variable square(const Variable& a);
Variable sqrt_v(const Variable& a);
Variable log_v(const Variable& a);
Variable clamp(const Variable& a, double lo, double hi);
Variable relu(const Variable& a);
Variable leaky_relu(const Variable& a, double negative_slope);
Variable sigmoid(const Variable& a);

// ---- reductions & broadcasts (mutually adjoint pairs) ----
Variable sum_all(const Variable& a);                       // [..] -> [1]
Variable broadcast_to(const Variable& s, const Shape& sh); // [1] -> [..]
Variable mean_all(const Variable& a);
Variable sum_per_sample(const Variable& a);                   // [B,..] -> [B]
Variable broadcast_rows(const Variable& s, const Shape& sh);  // [B] -> [B,..]
Variable mean_per_sample(const Variable& a);
Variable sum_to_channel(const Variable& a);                     // [B,C,..] -> [C]
Variable broadcast_channel(const Variable& b, const Shape& sh); // [C] -> [B,C,..]
/// x + per-channel bias (b has shape {x.shape[1]}).
Variable add_bias(const Variable& x, const Variable& b);

// ---- linear algebra / shape ----
Variable matmul(const Variable& a, const Variable& b, bool trans_a, bool trans_b);
Variable reshape(const Variable& a, Shape shape);
Variable concat_ch(const Variable& a, const Variable& b);
Variable slice_ch(const Variable& a, int c0, int c1);
Variable embed_ch(const Variable& a, int c0, int total_channels);

// ---- convolution & pooling ----
Variable conv3d(const Variable& x, const Variable& w, const Conv3dGeom& g);
/// Adjoint of conv3d in its input (this is also the transposed convolution
/// used by the decoder's up-sampling layers).
Variable conv3d_input_grad(const Variable& gy, const Variable& w, const Conv3dGeom& g);
Variable conv3d_weight_grad(const Variable& x, const Variable& gy, const Conv3dGeom& g);
Variable maxpool3d2(const Variable& x);

Variable detach(const Variable& v);

/// Reverse-mode differentiation of a scalar-like output with respect to
/// `inputs` (seeded with ones). When `create_graph` is true the returned
/// gradients are themselves tracked, enabling higher-order differentiation.
/// Inputs unreachable from the output get zero gradients.
std::vector<Variable> grad(const Variable& output, const std::vector<Variable>& inputs,
                           bool create_graph = false);

} // namespace vxc::nn
