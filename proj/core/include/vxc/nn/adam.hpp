// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "vxc/nn/model.hpp"

namespace vxc::nn {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam with bias correction, one instance per network. Updates the leaf
/// parameter tensors in place; state tensors are exposed for checkpointing.
class Adam {
public:
    Adam(const std::vector<NamedParam>& params, const AdamConfig& cfg = {});

    /// One update with gradients aligned to the construction-time parameter
    /// order. Throws ShapeError on any misaligned gradient.
    void step(const std::vector<Variable>& grads, double lr);

    std::int64_t t() const { return t_; }
    const std::vector<Tensor>& m() const { return m_; }
    const std::vector<Tensor>& v() const { return v_; }
    void restore(std::int64_t t, std::vector<Tensor> m, std::vector<Tensor> v);

private:
    AdamConfig cfg_;
    std::vector<Variable> params_;
    std::vector<Tensor> m_, v_;
    std::int64_t t_ = 0;
};

} // namespace vxc::nn
