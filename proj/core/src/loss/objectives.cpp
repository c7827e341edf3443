// SPDX-License-Identifier: Apache-2.0
#include "vxc/loss/objectives.hpp"

#include <string>

namespace vxc::loss {

using namespace vxc::nn;

void LossWeights::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ArgumentError("loss weights: alpha must lie in (0,1)");
    if (!(beta > 0.0 && beta <= 1.0))
        throw ArgumentError("loss weights: beta must lie in (0,1]");
    if (!(lambda >= 0.0)) throw ArgumentError("loss weights: lambda must be >= 0");
}

namespace {

Variable one_minus(const Variable& v) { return add_scalar(scale(v, -1.0), 1.0); }

} // namespace

Variable l_ae(const Variable& pred, const Variable& target, double alpha, double eps) {
    if (!pred.value().same_shape(target.value()))
        throw ShapeError("l_ae: pred/target shape mismatch " + shape_to_string(pred.shape()) +
                         " vs " + shape_to_string(target.shape()));
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("l_ae: alpha must lie in (0,1)");
    if (!(eps > 0.0 && eps < 0.5)) throw ArgumentError("l_ae: eps must lie in (0,0.5)");
    const Variable q = clamp(pred, eps, 1.0 - eps);
    const Variable pos = mul(target, log_v(q));
    const Variable neg = mul(one_minus(target), log_v(one_minus(q)));
    return scale(mean_all(add(scale(pos, alpha), scale(neg, 1.0 - alpha))), -1.0);
}

Variable l_gan_g(const Variable& fake_latents) {
    if (fake_latents.value().numel() == 0) throw ArgumentError("l_gan_g: empty batch");
    return scale(mean_all(fake_latents), -1.0);
}

Variable gradient_penalty(const CriticFn& critic, const Variable& condition,
                          const Variable& endpoint_a, const Variable& endpoint_b,
                          const std::vector<double>& epsilon_draws) {
    if (!grad_enabled())
        throw SpecError("gradient_penalty: gradients are disabled in this scope; the penalty "
                        "needs a differentiable critic evaluation");
    if (!endpoint_a.value().same_shape(endpoint_b.value()) ||
        !endpoint_a.value().same_shape(condition.value()))
        throw ShapeError("gradient_penalty: endpoint/condition shape mismatch");
    const int batch = condition.shape()[0];
    if (static_cast<int>(epsilon_draws.size()) != batch)
        throw ArgumentError("gradient_penalty: need one epsilon draw per sample, got " +
                            std::to_string(epsilon_draws.size()));
    for (double e : epsilon_draws)
        if (!(e >= 0.0 && e <= 1.0))
            throw ArgumentError("gradient_penalty: epsilon draws must lie in [0,1]");

    // yhat_i = eps_i * a_i + (1 - eps_i) * b_i, built as a leaf so the
    // critic's input gradient is directly addressable.
    Tensor yhat(endpoint_a.shape());
    const std::size_t per = yhat.numel() / static_cast<std::size_t>(batch);
    const Tensor& av = endpoint_a.value();
    const Tensor& bv = endpoint_b.value();
    for (int b = 0; b < batch; ++b) {
        const double e = epsilon_draws[static_cast<std::size_t>(b)];
        for (std::size_t i = 0; i < per; ++i) {
            const std::size_t k = static_cast<std::size_t>(b) * per + i;
            yhat[k] = e * av[k] + (1.0 - e) * bv[k];
        }
    }
    Variable yhat_v = Variable::parameter(std::move(yhat));

    const Variable latents = critic(condition, yhat_v);
    const Variable score_sum = sum_all(mean_per_sample(latents));
    const Variable g = grad(score_sum, {yhat_v}, /*create_graph=*/true)[0];
    const Variable norm = sqrt_v(sum_per_sample(square(g)));
    return mean_all(square(add_scalar(norm, -1.0)));
}

Variable gradient_penalty(const nn::Discriminator& disc, const Variable& condition,
                          const Variable& endpoint_a, const Variable& endpoint_b,
                          const std::vector<double>& epsilon_draws) {
    return gradient_penalty(
        [&disc](const Variable& cond, const Variable& cand) {
            return disc.forward(cond, cand);
        },
        condition, endpoint_a, endpoint_b, epsilon_draws);
}

Variable l_gan_d(const Variable& real_latents, const Variable& fake_latents,
                 const Variable& gp_value, double lambda) {
    if (real_latents.shape()[0] != fake_latents.shape()[0])
        throw ShapeError("l_gan_d: real/fake batch size mismatch");
    if (real_latents.value().numel() == 0) throw ArgumentError("l_gan_d: empty batch");
    if (!(lambda >= 0.0)) throw ArgumentError("l_gan_d: lambda must be >= 0");
    Variable base = sub(mean_all(fake_latents), mean_all(real_latents));
    if (lambda == 0.0) return base;
    return add(base, scale(gp_value, lambda));
}

Variable l_g(const Variable& l_ae_value, const Variable& l_gan_g_value, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ArgumentError("l_g: beta must lie in [0,1]");
    return add(scale(l_ae_value, beta), scale(l_gan_g_value, 1.0 - beta));
}

} // namespace vxc::loss
