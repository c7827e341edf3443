// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vxc/nn/autodiff.hpp"

namespace vxc::nn {

/// Architecture hyperparameters shared by generator and discriminator.
/// The resolution fixes the level count through N = 2^(levels+1); channel
/// widths follow min(base * 2^i, cap).
struct ModelSpec {
    int resolution = 64;
    int levels = 5;
    int base_channels = 64;
    int channel_cap = 512;
    int fc_hidden = 0;     // 0 = half the flattened bottleneck width
    bool use_skips = true; // ablation flag: drop encoder->decoder skips
    std::uint64_t seed = 0;

    /// Output channels of encoder level i (0-based).
    int channels_at(int level) const;
    /// Spatial size at the bottleneck (resolution / 2^levels, always 2).
    int bottleneck_spatial() const { return resolution >> levels; }
    /// Flattened bottleneck width = bottleneck_spatial^3 * top channels.
    int flatten_width() const;
    int fc_hidden_width() const { return fc_hidden > 0 ? fc_hidden : flatten_width() / 2; }
    /// Discriminator latent vector length (same arithmetic as flatten_width).
    int latent_length() const { return flatten_width(); }

    /// Throws SpecError unless resolution == 2^(levels+1) and sizes are sane.
    void validate() const;

    bool operator==(const ModelSpec&) const = default;

    static ModelSpec toy(int resolution = 16, int base = 8, std::uint64_t seed = 0);
};

struct NamedParam {
    std::string name;
    Variable var;
};

/// Volumetric encoder / FC bottleneck / up-convolutional decoder with
/// skip concatenations; maps a [B,1,N,N,N] occupancy batch to completion
/// probabilities of the same shape, all values strictly inside (0,1).
class Generator {
public:
    explicit Generator(const ModelSpec& spec);
    Generator(const ModelSpec& spec, std::uint64_t seed);

    const ModelSpec& spec() const { return spec_; }
    std::vector<NamedParam>& params() { return params_; }
    const std::vector<NamedParam>& params() const { return params_; }

    /// Builds the forward graph. Throws ShapeError on resolution mismatch.
    Variable forward(const Variable& partial) const;

private:
    ModelSpec spec_;
    std::vector<NamedParam> params_;
    const Variable& p(const std::string& name) const;
};

/// Conditional critic: channel-concatenates (condition, candidate), runs
/// `levels` stride-2 conv blocks (ReLU, final sigmoid) and flattens the
/// result into a latent vector per sample.
class Discriminator {
public:
    explicit Discriminator(const ModelSpec& spec);
    Discriminator(const ModelSpec& spec, std::uint64_t seed);

    const ModelSpec& spec() const { return spec_; }
    std::vector<NamedParam>& params() { return params_; }
    const std::vector<NamedParam>& params() const { return params_; }

    /// [B,1,N,N,N] x 2 -> [B, latent_length]. Differentiable with respect to
    /// the candidate input as well as the parameters.
    Variable forward(const Variable& condition, const Variable& candidate) const;

private:
    ModelSpec spec_;
    std::vector<NamedParam> params_;
    const Variable& p(const std::string& name) const;
};

/// FNV digest over a parameter collection's values (used by the
/// frozen-network tests and training logs).
std::uint64_t params_digest(const std::vector<NamedParam>& params);

/// Batched input validation shared by both networks.
void check_volume_input(const Tensor& t, int resolution, const char* who);

} // namespace vxc::nn
