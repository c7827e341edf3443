// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "vxc/nn/adam.hpp"
#include "vxc/nn/model.hpp"
#include "vxc/train/loop.hpp"
#include "vxc/util/rng.hpp"

using namespace vxc;
using namespace vxc::nn;

namespace {

Tensor random_volume(int batch, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tensor t(Shape{batch, 1, n, n, n});
    for (std::size_t i = 0; i < t.numel(); ++i)
        t[i] = util::uniform01(rng) < 0.3 ? 1.0 : 0.0;
    return t;
}

} // namespace

static void BM_Conv3dForward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    Tensor x(Shape{1, 8, n, n, n});
    Tensor w(Shape{16, 8, 4, 4, 4});
    for (std::size_t i = 0; i < x.numel(); ++i) x[i] = util::uniform01(rng);
    for (std::size_t i = 0; i < w.numel(); ++i) w[i] = util::uniform01(rng);
    const auto g = Conv3dGeom::same_stride1(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(conv3d_forward_kernel(x, w, g));
    const double macs = double(n) * n * n * 16 * 8 * 64;
    state.counters["GMAC/s"] =
        benchmark::Counter(macs * state.iterations() / 1e9, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Conv3dForward)->Arg(8)->Arg(16);

static void BM_GeneratorForward(benchmark::State& state) {
    const auto spec = ModelSpec::toy(16, 8, 1);
    const Generator gen(spec);
    const Tensor in = random_volume(1, 16, 2);
    NoGradGuard ng;
    for (auto _ : state) benchmark::DoNotOptimize(gen.forward(Variable::constant(in)));
}
BENCHMARK(BM_GeneratorForward);

static void BM_TrainStepG_AeOnly(benchmark::State& state) {
    const auto spec = ModelSpec::toy(16, 8, 3);
    Generator gen(spec);
    Discriminator disc(spec);
    Adam opt(gen.params());
    const Tensor partial = random_volume(8, 16, 4);
    const Tensor full = random_volume(8, 16, 5);
    loss::LossWeights w;
    w.beta = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            train::train_step_g(gen, opt, disc, partial, full, w, 1e-4, /*ae_only=*/true));
}
BENCHMARK(BM_TrainStepG_AeOnly);

static void BM_TrainStepD_WithPenalty(benchmark::State& state) {
    const auto spec = ModelSpec::toy(16, 8, 6);
    Generator gen(spec);
    Discriminator disc(spec);
    Adam opt(disc.params());
    const Tensor partial = random_volume(8, 16, 7);
    const Tensor full = random_volume(8, 16, 8);
    loss::LossWeights w; // lambda 10: full second-order path
    std::mt19937_64 rng(9);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            train::train_step_d(disc, opt, gen, partial, full, w, 1e-4, rng));
}
BENCHMARK(BM_TrainStepD_WithPenalty);
