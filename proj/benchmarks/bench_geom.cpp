// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "vxc/geom/procedural.hpp"
#include "vxc/geom/scan.hpp"

using namespace vxc;

static void BM_RenderDepth(benchmark::State& state) {
    const auto mesh =
        geom::normalize_mesh(geom::make_procedural_mesh(geom::ProceduralKind::chair));
    const geom::PinholeCamera cam{};
    const geom::ViewPose pose{0.4, 1.1, 2.3};
    for (auto _ : state) benchmark::DoNotOptimize(geom::render_depth(mesh, pose, cam));
    state.SetItemsProcessed(state.iterations() * cam.width * cam.height);
}
BENCHMARK(BM_RenderDepth);

static void BM_VoxelizeSurface(benchmark::State& state) {
    const auto mesh =
        geom::normalize_mesh(geom::make_procedural_mesh(geom::ProceduralKind::chair));
    const geom::ViewPose pose{0.4, 1.1, 2.3};
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(geom::voxelize_surface(mesh, pose, n));
}
BENCHMARK(BM_VoxelizeSurface)->Arg(16)->Arg(32)->Arg(64);

static void BM_DepthToPartial(benchmark::State& state) {
    const auto mesh =
        geom::normalize_mesh(geom::make_procedural_mesh(geom::ProceduralKind::chair));
    const geom::PinholeCamera cam{};
    const geom::ViewPose pose{0.4, 1.1, 2.3};
    const auto depth = geom::render_depth(mesh, pose, cam);
    for (auto _ : state)
        benchmark::DoNotOptimize(geom::depth_to_partial_grid(depth, pose, cam, 32));
}
BENCHMARK(BM_DepthToPartial);

static void BM_FillSolid(benchmark::State& state) {
    const auto mesh =
        geom::normalize_mesh(geom::make_procedural_mesh(geom::ProceduralKind::box));
    const auto shell = geom::voxelize_surface(mesh, {}, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(geom::fill_solid(shell));
}
BENCHMARK(BM_FillSolid)->Arg(16)->Arg(32);
