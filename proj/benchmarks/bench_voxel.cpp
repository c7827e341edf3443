// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "vxc/util/rng.hpp"
#include "vxc/voxel/grid_io.hpp"
#include "vxc/voxel/metrics.hpp"
#include "vxc/voxel/morphology.hpp"

using namespace vxc;

namespace {

voxel::OccupancyGrid random_prob(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<float> vals(std::size_t(n) * n * n);
    for (auto& v : vals) v = static_cast<float>(util::uniform01(rng));
    return {voxel::Dims3::cube(n), voxel::GridKind::probability, std::move(vals)};
}

voxel::OccupancyGrid random_bin(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<float> vals(std::size_t(n) * n * n);
    for (auto& v : vals) v = util::uniform01(rng) < 0.3 ? 1.0f : 0.0f;
    return {voxel::Dims3::cube(n), voxel::GridKind::binary, std::move(vals)};
}

} // namespace

static void BM_Iou(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto pred = random_prob(n, 1);
    const auto target = random_bin(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(voxel::iou(pred, target, 0.5));
    state.SetItemsProcessed(state.iterations() * pred.voxel_count());
}
BENCHMARK(BM_Iou)->Arg(16)->Arg(32)->Arg(64);

static void BM_CrossEntropy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto pred = random_prob(n, 3);
    const auto target = random_bin(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(voxel::cross_entropy(pred, target, 1e-7));
    state.SetItemsProcessed(state.iterations() * pred.voxel_count());
}
BENCHMARK(BM_CrossEntropy)->Arg(16)->Arg(32)->Arg(64);

static void BM_Dilate(benchmark::State& state) {
    const auto g = random_bin(static_cast<int>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(voxel::dilate(g, 1));
}
BENCHMARK(BM_Dilate)->Arg(16)->Arg(32);

static void BM_GridEncodeBinary(benchmark::State& state) {
    const auto g = random_bin(static_cast<int>(state.range(0)), 6);
    for (auto _ : state) benchmark::DoNotOptimize(voxel::encode_grid(g));
}
BENCHMARK(BM_GridEncodeBinary)->Arg(32)->Arg(64);

static void BM_GridDecodeFloat(benchmark::State& state) {
    const auto bytes = voxel::encode_grid(random_prob(static_cast<int>(state.range(0)), 7));
    for (auto _ : state) benchmark::DoNotOptimize(voxel::decode_grid(bytes.data(), bytes.size()));
}
BENCHMARK(BM_GridDecodeFloat)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
