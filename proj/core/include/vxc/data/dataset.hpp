// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vxc/geom/camera.hpp"
#include "vxc/geom/mesh.hpp"
#include "vxc/geom/pose.hpp"
#include "vxc/voxel/grid.hpp"

namespace vxc::data {

/// One training/eval record: a partial 2.5D grid aligned with its complete
/// 3D grid, plus provenance. Paths are relative to the manifest root.
struct SamplePair {
    std::string partial_path;
    std::string full_path;
    std::string category;
    std::string model_id;
    int view_index = 0;
    geom::ViewPose angles;
};

struct Manifest {
    int resolution = 0;
    std::string split; // "train" or "test"
    std::string config_digest;
    std::vector<SamplePair> records;
    std::filesystem::path root; // directory containing manifest.txt (not serialized)
};

struct SynthesisConfig {
    int resolution = 64;
    int n_per_axis = 5;
    geom::PinholeCamera camera;
    bool solid = false; // fill enclosed cavities of the ground-truth grids
    /// Pairs whose partial grid is not at least this contained in
    /// dilate(full, 1) are dropped and logged as failures.
    double min_containment = 0.99;

    std::string digest_hex() const;
};

/// Mesh to scan: either a path to an OBJ file or a preloaded mesh.
struct MeshSource {
    std::string category;
    std::string model_id;
    std::filesystem::path path;
    std::optional<geom::TriangleMesh> mesh;
};

struct SynthesisResult {
    Manifest manifest;
    std::vector<std::string> failures; // one line per skipped model or pair
};

/// Scan every mesh from n_per_axis^3 poses, write grid pairs and the
/// manifest under out_dir. Per-model errors are recorded and synthesis
/// continues; zero successful models is a hard error. `jobs` fans the
/// per-model work out over a thread pool; outputs are identical for any
/// job count.
SynthesisResult synthesize_dataset(const std::vector<MeshSource>& meshes,
                                   const std::string& split, const SynthesisConfig& config,
                                   const std::filesystem::path& out_dir, int jobs = 1);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

/// Content digest of a manifest (the serialized record set).
std::uint64_t manifest_digest(const Manifest& manifest);

/// Load the referenced grid pairs in index order. Throws IoError naming the
/// record on a missing file, ArgumentError on an out-of-range index.
std::pair<std::vector<voxel::OccupancyGrid>, std::vector<voxel::OccupancyGrid>>
load_batch(const Manifest& manifest, std::span<const int> indices);

/// Deterministic permutation of 0..|records|-1 for one epoch.
std::vector<int> shuffled_epoch(const Manifest& manifest, std::uint64_t seed);

/// Collect OBJ mesh sources under a directory: immediate subdirectories are
/// categories, OBJ files directly in the directory fall into a category
/// named after the directory itself. Sorted for determinism.
std::vector<MeshSource> scan_mesh_dir(const std::filesystem::path& dir);

} // namespace vxc::data
