// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/adam.hpp"

#include <cmath>

namespace vxc::nn {

Adam::Adam(const std::vector<NamedParam>& params, const AdamConfig& cfg) : cfg_(cfg) {
    params_.reserve(params.size());
    m_.reserve(params.size());
    v_.reserve(params.size());
    for (const auto& np : params) {
        params_.push_back(np.var);
        m_.emplace_back(np.var.shape());
        v_.emplace_back(np.var.shape());
    }
}

void Adam::step(const std::vector<Variable>& grads, double lr) {
    if (grads.size() != params_.size()) throw ShapeError("adam: gradient count mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params_.size(); ++i) {
        Tensor& theta = params_[i].mutable_value();
        const Tensor& g = grads[i].value();
        if (!g.same_shape(theta))
            throw ShapeError("adam: gradient shape mismatch at parameter " + std::to_string(i));
        Tensor& m = m_[i];
        Tensor& v = v_[i];
        for (std::size_t k = 0; k < theta.numel(); ++k) {
            const double gk = g[k];
            m[k] = cfg_.beta1 * m[k] + (1.0 - cfg_.beta1) * gk;
            v[k] = cfg_.beta2 * v[k] + (1.0 - cfg_.beta2) * gk * gk;
            const double mhat = m[k] / bc1;
            const double vhat = v[k] / bc2;
            theta[k] -= lr * mhat / (std::sqrt(vhat) + cfg_.eps);
        }
    }
}

void Adam::restore(std::int64_t t, std::vector<Tensor> m, std::vector<Tensor> v) {
    if (m.size() != params_.size() || v.size() != params_.size())
        throw ShapeError("adam: restored state count mismatch");
    for (std::size_t i = 0; i < params_.size(); ++i)
        if (!m[i].same_shape(params_[i].value()) || !v[i].same_shape(params_[i].value()))
            throw ShapeError("adam: restored state shape mismatch at parameter " +
                             std::to_string(i));
    t_ = t;
    m_ = std::move(m);
    v_ = std::move(v);
}

} // namespace vxc::nn
