// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/model.hpp"

#include <cmath>
#include <random>

#include "vxc/util/digest.hpp"
#include "vxc/util/rng.hpp"

namespace vxc::nn {

int ModelSpec::channels_at(int level) const {
    const long long c = static_cast<long long>(base_channels) << level;
    return static_cast<int>(std::min<long long>(c, channel_cap));
}

int ModelSpec::flatten_width() const {
    const int s = bottleneck_spatial();
    return s * s * s * channels_at(levels - 1);
}

void ModelSpec::validate() const {
    if (levels < 1) throw SpecError("model spec: levels must be >= 1");
    if (resolution != (1 << (levels + 1)))
        throw SpecError("model spec: resolution " + std::to_string(resolution) +
                        " must equal 2^(levels+1) = " + std::to_string(1 << (levels + 1)));
    if (base_channels < 1 || channel_cap < base_channels)
        throw SpecError("model spec: bad channel schedule");
    if (fc_hidden < 0) throw SpecError("model spec: fc_hidden must be >= 0");
}

ModelSpec ModelSpec::toy(int resolution, int base, std::uint64_t seed) {
    ModelSpec s;
    s.resolution = resolution;
    s.levels = 0;
    int n = resolution;
    while (n > 2) {
        n /= 2;
        ++s.levels;
    }
    s.base_channels = base;
    s.channel_cap = 512;
    s.seed = seed;
    s.validate();
    return s;
}

namespace {

constexpr double kLeakySlope = 0.2;

/// Uniform fan-in-scaled init: U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
Tensor init_weight(const Shape& shape, std::size_t fan_in, std::mt19937_64& rng) {
    Tensor t(shape);
    const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t i = 0; i < t.numel(); ++i) t[i] = util::uniform(rng, -s, s);
    return t;
}

void add_param(std::vector<NamedParam>& params, const std::string& name, Tensor t) {
    params.push_back({name, Variable::parameter(std::move(t))});
}

} // namespace

void check_volume_input(const Tensor& t, int resolution, const char* who) {
    if (t.ndim() != 5 || t.dim(1) != 1 || t.dim(2) != resolution || t.dim(3) != resolution ||
        t.dim(4) != resolution)
        throw ShapeError(std::string(who) + ": expected [B,1," + std::to_string(resolution) +
                         "^3] input, got " + shape_to_string(t.shape()));
}

// ---- Generator ----

Generator::Generator(const ModelSpec& spec) : Generator(spec, spec.seed) {}

Generator::Generator(const ModelSpec& spec, std::uint64_t seed) : spec_(spec) {
    spec_.validate();
    std::mt19937_64 rng(util::mix_seed(seed, 0x67656e /* "gen" */));
    const int L = spec_.levels;

    int in_ch = 1;
    for (int i = 0; i < L; ++i) {
        const int out_ch = spec_.channels_at(i);
        add_param(params_, "enc" + std::to_string(i) + ".w",
                  init_weight({out_ch, in_ch, 4, 4, 4}, static_cast<std::size_t>(in_ch) * 64,
                              rng));
        add_param(params_, "enc" + std::to_string(i) + ".b", Tensor(Shape{out_ch}));
        in_ch = out_ch;
    }

    const int flat = spec_.flatten_width();
    const int hidden = spec_.fc_hidden_width();
    add_param(params_, "fc1.w",
              init_weight({hidden, flat}, static_cast<std::size_t>(flat), rng));
    add_param(params_, "fc1.b", Tensor(Shape{hidden}));
    add_param(params_, "fc2.w",
              init_weight({flat, hidden}, static_cast<std::size_t>(hidden), rng));
    add_param(params_, "fc2.b", Tensor(Shape{flat}));

    // Decoder mirrors the encoder's channel schedule in reverse; skips double
    // the input channels at every stage.
    int dec_in = spec_.channels_at(L - 1);
    for (int j = 0; j < L; ++j) {
        const int skip_ch = spec_.use_skips ? spec_.channels_at(L - 1 - j) : 0;
        const int total_in = dec_in + skip_ch;
        const int out_ch = (j == L - 1) ? 1 : spec_.channels_at(L - 2 - j);
        // Up-conv weights live in the adjoint-conv orientation: [in, out, k^3].
        // Each output voxel receives k^3/s^3 = 8 taps per input channel.
        add_param(params_, "dec" + std::to_string(j) + ".w",
                  init_weight({total_in, out_ch, 4, 4, 4},
                              static_cast<std::size_t>(total_in) * 8, rng));
        add_param(params_, "dec" + std::to_string(j) + ".b", Tensor(Shape{out_ch}));
        dec_in = out_ch;
    }
}

const Variable& Generator::p(const std::string& name) const {
    for (const auto& np : params_)
        if (np.name == name) return np.var;
    throw SpecError("generator: unknown parameter " + name);
}

Variable Generator::forward(const Variable& partial) const {
    check_volume_input(partial.value(), spec_.resolution, "generator_forward");
    const int L = spec_.levels;
    const int batch = partial.shape()[0];

    Variable h = partial;
    std::vector<Variable> pooled; // skip sources, one per level
    int spatial = spec_.resolution;
    for (int i = 0; i < L; ++i) {
        const auto geom = Conv3dGeom::same_stride1(spatial, 4);
        h = conv3d(h, p("enc" + std::to_string(i) + ".w"), geom);
        h = add_bias(h, p("enc" + std::to_string(i) + ".b"));
        h = leaky_relu(h, kLeakySlope);
        h = maxpool3d2(h);
        spatial /= 2;
        pooled.push_back(h);
    }

    const int flat = spec_.flatten_width();
    h = reshape(h, {batch, flat});
    h = relu(add_bias(reshape(matmul(h, p("fc1.w"), false, true),
                              {batch, spec_.fc_hidden_width()}),
                      p("fc1.b")));
    h = relu(add_bias(reshape(matmul(h, p("fc2.w"), false, true), {batch, flat}), p("fc2.b")));
    const int top_ch = spec_.channels_at(L - 1);
    const int bs = spec_.bottleneck_spatial();
    h = reshape(h, {batch, top_ch, bs, bs, bs});

    for (int j = 0; j < L; ++j) {
        if (spec_.use_skips) h = concat_ch(h, pooled[static_cast<std::size_t>(L - 1 - j)]);
        // Transposed conv: adjoint of the stride-2 halving conv at 2x spatial.
        const auto geom = Conv3dGeom::halve(2 * spatial, 4);
        h = conv3d_input_grad(h, p("dec" + std::to_string(j) + ".w"), geom);
        h = add_bias(h, p("dec" + std::to_string(j) + ".b"));
        h = (j == L - 1) ? sigmoid(h) : relu(h);
        spatial *= 2;
    }
    return h;
}

// ---- Discriminator ----

Discriminator::Discriminator(const ModelSpec& spec) : Discriminator(spec, spec.seed) {}

Discriminator::Discriminator(const ModelSpec& spec, std::uint64_t seed) : spec_(spec) {
    spec_.validate();
    std::mt19937_64 rng(util::mix_seed(seed, 0x64697363 /* "disc" */));
    int in_ch = 2; // condition || candidate
    for (int i = 0; i < spec_.levels; ++i) {
        const int out_ch = spec_.channels_at(i);
        add_param(params_, "conv" + std::to_string(i) + ".w",
                  init_weight({out_ch, in_ch, 4, 4, 4}, static_cast<std::size_t>(in_ch) * 64,
                              rng));
        add_param(params_, "conv" + std::to_string(i) + ".b", Tensor(Shape{out_ch}));
        in_ch = out_ch;
    }
}

const Variable& Discriminator::p(const std::string& name) const {
    for (const auto& np : params_)
        if (np.name == name) return np.var;
    throw SpecError("discriminator: unknown parameter " + name);
}

Variable Discriminator::forward(const Variable& condition, const Variable& candidate) const {
    check_volume_input(condition.value(), spec_.resolution, "discriminator_forward");
    if (!condition.value().same_shape(candidate.value()))
        throw ShapeError("discriminator_forward: condition/candidate shape mismatch " +
                         shape_to_string(condition.shape()) + " vs " +
                         shape_to_string(candidate.shape()));
    const int batch = condition.shape()[0];

    Variable h = concat_ch(condition, candidate);
    int spatial = spec_.resolution;
    for (int i = 0; i < spec_.levels; ++i) {
        const auto geom = Conv3dGeom::halve(spatial, 4);
        h = conv3d(h, p("conv" + std::to_string(i) + ".w"), geom);
        h = add_bias(h, p("conv" + std::to_string(i) + ".b"));
        h = (i == spec_.levels - 1) ? sigmoid(h) : relu(h);
        spatial /= 2;
    }
    return reshape(h, {batch, spec_.latent_length()});
}

std::uint64_t params_digest(const std::vector<NamedParam>& params) {
    util::Digest d;
    for (const auto& np : params) {
        d.str(np.name);
        const Tensor& t = np.var.value();
        d.bytes(t.data(), t.numel() * sizeof(double));
    }
    return d.value();
}

} // namespace vxc::nn
