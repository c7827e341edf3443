// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "vxc/nn/model.hpp"

namespace vxc::loss {

using nn::Variable;

enum class GpInterpolant {
    real_fake,  // interpolate ground truth with the fake (standard usage)
    input_fake, // interpolate the conditioning view with the fake
};

struct LossWeights {
    double alpha = 0.85;  // false-positive weight of the reconstruction loss
    double beta = 0.05;   // joint mix: beta*L_ae + (1-beta)*L_gan_g
    double lambda = 10.0; // gradient-penalty coefficient
    GpInterpolant gp_interpolant = GpInterpolant::real_fake;

    /// alpha in (0,1), beta in (0,1] (beta=1 is the reconstruction-only
    /// ablation), lambda >= 0.
    void validate() const;
};

/// Weighted reconstruction loss: mean over voxels of
/// -alpha*y*log(y') - (1-alpha)*(1-y)*log(1-y'), predictions clamped to
/// [eps, 1-eps]. Differentiable in pred.
Variable l_ae(const Variable& pred, const Variable& target, double alpha, double eps = 1e-7);

/// Generator adversarial loss: negative mean over batch and latent entries.
Variable l_gan_g(const Variable& fake_latents);

/// Maps (condition, candidate) to per-sample latent vectors [B, L].
using CriticFn = std::function<Variable(const Variable&, const Variable&)>;

/// Gradient penalty: for every sample, interpolate between the endpoints
/// with its epsilon draw, differentiate the mean-latent critic output with
/// respect to the interpolant, and average (||g||_2 - 1)^2 over the batch.
/// The result stays differentiable with respect to the critic parameters
/// (second-order path), which the critic update requires.
Variable gradient_penalty(const CriticFn& critic, const Variable& condition,
                          const Variable& endpoint_a, const Variable& endpoint_b,
                          const std::vector<double>& epsilon_draws);

Variable gradient_penalty(const nn::Discriminator& disc, const Variable& condition,
                          const Variable& endpoint_a, const Variable& endpoint_b,
                          const std::vector<double>& epsilon_draws);

/// Critic loss: mean(fake latents) - mean(real latents) + lambda * gp.
Variable l_gan_d(const Variable& real_latents, const Variable& fake_latents,
                 const Variable& gp_value, double lambda);

/// Joint generator objective: beta * l_ae + (1-beta) * l_gan_g.
/// beta in [0,1]; the endpoints give the pure reconstruction / pure
/// adversarial degenerate mixes.
Variable l_g(const Variable& l_ae_value, const Variable& l_gan_g_value, double beta);

} // namespace vxc::loss
