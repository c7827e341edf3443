// SPDX-License-Identifier: Apache-2.0
#include "vxc/data/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "vxc/error.hpp"
#include "vxc/geom/scan.hpp"
#include "vxc/util/digest.hpp"
#include "vxc/util/rng.hpp"
#include "vxc/voxel/grid_io.hpp"
#include "vxc/voxel/morphology.hpp"

namespace vxc::data {

namespace {

constexpr const char* kManifestName = "manifest.txt";

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_token(const std::string& s, const char* what) {
    if (s.empty()) throw ArgumentError(std::string(what) + " must not be empty");
    for (char c : s)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw ArgumentError(std::string(what) + " must not contain whitespace: '" + s + "'");
}

void check_split(const std::string& split) {
    if (split != "train" && split != "test")
        throw ArgumentError("split tag must be 'train' or 'test', got '" + split + "'");
}

struct ModelOutput {
    std::vector<SamplePair> records;
    std::vector<std::string> failures;
    bool model_ok = false;
};

} // namespace

std::string SynthesisConfig::digest_hex() const {
    util::Digest d;
    d.pod(resolution).pod(n_per_axis).pod(solid).pod(min_containment);
    d.pod(camera.width).pod(camera.height).pod(camera.focal);
    d.pod(camera.cx).pod(camera.cy).pod(camera.distance);
    return d.hex();
}

SynthesisResult synthesize_dataset(const std::vector<MeshSource>& meshes,
                                   const std::string& split, const SynthesisConfig& config,
                                   const std::filesystem::path& out_dir, int jobs) {
    if (meshes.empty()) throw ArgumentError("synthesize_dataset: empty mesh list");
    if (config.resolution < 4) throw ArgumentError("synthesize_dataset: resolution must be >= 4");
    if (config.n_per_axis < 1) throw ArgumentError("synthesize_dataset: n_per_axis must be >= 1");
    check_split(split);
    {
        // Manifest keys are (model_id, view_index) and every model gets the
        // same view indices, so model ids must be globally unique.
        std::set<std::string> seen;
        for (const auto& m : meshes) {
            check_token(m.category, "category");
            check_token(m.model_id, "model_id");
            if (!seen.insert(m.model_id).second)
                throw ArgumentError("synthesize_dataset: duplicate model_id '" + m.model_id +
                                    "'");
        }
    }

    std::filesystem::create_directories(out_dir);
    const auto poses = geom::make_view_poses(config.n_per_axis);

    std::vector<ModelOutput> outputs(meshes.size());
    std::atomic<std::size_t> next{0};

    auto process_model = [&](std::size_t mi) {
        const MeshSource& src = meshes[mi];
        ModelOutput& out = outputs[mi];
        geom::TriangleMesh normalized;
        try {
            geom::TriangleMesh raw = src.mesh ? *src.mesh : geom::load_obj(src.path);
            normalized = geom::normalize_mesh(raw);
        } catch (const std::exception& e) {
            out.failures.push_back("model " + src.model_id + ": " + e.what());
            return;
        }
        const auto model_dir = out_dir / src.category / src.model_id;
        std::filesystem::create_directories(model_dir);
        for (std::size_t vi = 0; vi < poses.size(); ++vi) {
            const geom::ViewPose& pose = poses[vi];
            const auto depth = geom::render_depth(normalized, pose, config.camera);
            auto partial = geom::depth_to_partial_grid(depth, pose, config.camera,
                                                       config.resolution);
            auto full = geom::voxelize_surface(normalized, pose, config.resolution);
            if (config.solid) full = geom::fill_solid(full);

            const double frac =
                voxel::containment_fraction(voxel::dilate(full, 1), partial);
            if (frac < config.min_containment) {
                out.failures.push_back("pair " + src.model_id + "/" + std::to_string(vi) +
                                       ": containment " + fmt_double(frac) + " below threshold");
                continue;
            }
            const std::string stem = std::to_string(vi);
            const auto rel_dir =
                std::filesystem::path(src.category) / src.model_id;
            SamplePair rec;
            rec.partial_path = (rel_dir / (stem + ".partial.vxg")).generic_string();
            rec.full_path = (rel_dir / (stem + ".full.vxg")).generic_string();
            rec.category = src.category;
            rec.model_id = src.model_id;
            rec.view_index = static_cast<int>(vi);
            rec.angles = pose;
            voxel::save_grid(partial, out_dir / rec.partial_path);
            voxel::save_grid(full, out_dir / rec.full_path);
            out.records.push_back(std::move(rec));
        }
        out.model_ok = true;
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(meshes.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < meshes.size(); ++i) process_model(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        std::exception_ptr first_error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                try {
                    for (std::size_t i = next.fetch_add(1); i < meshes.size();
                         i = next.fetch_add(1))
                        process_model(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    SynthesisResult result;
    result.manifest.resolution = config.resolution;
    result.manifest.split = split;
    result.manifest.config_digest = config.digest_hex();
    result.manifest.root = out_dir;
    std::size_t ok_models = 0;
    for (auto& out : outputs) {
        if (out.model_ok) ++ok_models;
        for (auto& r : out.records) result.manifest.records.push_back(std::move(r));
        for (auto& f : out.failures) result.failures.push_back(std::move(f));
    }
    if (ok_models == 0)
        throw IoError("synthesize_dataset: no readable meshes (first failure: " +
                      (result.failures.empty() ? std::string("?") : result.failures.front()) +
                      ")");
    save_manifest(result.manifest, out_dir / kManifestName);
    return result;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    check_split(manifest.split);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << "vxc-manifest 1\n";
    out << "resolution " << manifest.resolution << '\n';
    out << "split " << manifest.split << '\n';
    out << "config " << manifest.config_digest << '\n';
    out << "records " << manifest.records.size() << '\n';
    for (const auto& r : manifest.records) {
        out << "record " << r.category << ' ' << r.model_id << ' ' << r.view_index << ' '
            << fmt_double(r.angles.roll) << ' ' << fmt_double(r.angles.pitch) << ' '
            << fmt_double(r.angles.yaw) << ' ' << r.partial_path << ' ' << r.full_path << '\n';
    }
    if (!out) throw IoError("short write: " + path.string());
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());
    Manifest m;
    m.root = path.parent_path();
    std::string line;
    int line_no = 0;
    std::size_t declared = 0;
    auto bad = [&](const std::string& what) -> FormatError {
        return FormatError("manifest " + path.string() + " line " + std::to_string(line_no) +
                           ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (line_no == 1) {
            std::string ver;
            ss >> ver;
            if (tag != "vxc-manifest" || ver != "1") throw bad("bad header");
            continue;
        }
        if (tag == "resolution") ss >> m.resolution;
        else if (tag == "split") ss >> m.split;
        else if (tag == "config") ss >> m.config_digest;
        else if (tag == "records") ss >> declared;
        else if (tag == "record") {
            SamplePair r;
            if (!(ss >> r.category >> r.model_id >> r.view_index >> r.angles.roll >>
                  r.angles.pitch >> r.angles.yaw >> r.partial_path >> r.full_path))
                throw bad("malformed record");
            m.records.push_back(std::move(r));
        } else throw bad("unknown tag '" + tag + "'");
        if (ss.fail()) throw bad("malformed value");
    }
    if (m.resolution <= 0) throw FormatError("manifest: missing resolution");
    check_split(m.split);
    if (m.records.size() != declared)
        throw FormatError("manifest: record count mismatch (declared " +
                          std::to_string(declared) + ", found " +
                          std::to_string(m.records.size()) + ")");
    std::set<std::pair<std::string, int>> keys;
    for (const auto& r : m.records)
        if (!keys.insert({r.model_id, r.view_index}).second)
            throw FormatError("manifest: duplicate (model_id, view_index) key " + r.model_id +
                              "/" + std::to_string(r.view_index));
    return m;
}

std::uint64_t manifest_digest(const Manifest& manifest) {
    util::Digest d;
    d.pod(manifest.resolution).str(manifest.split).str(manifest.config_digest);
    for (const auto& r : manifest.records) {
        d.str(r.category).str(r.model_id).pod(r.view_index);
        d.pod(r.angles.roll).pod(r.angles.pitch).pod(r.angles.yaw);
        d.str(r.partial_path).str(r.full_path);
    }
    return d.value();
}

std::pair<std::vector<voxel::OccupancyGrid>, std::vector<voxel::OccupancyGrid>>
load_batch(const Manifest& manifest, std::span<const int> indices) {
    std::vector<voxel::OccupancyGrid> partials, fulls;
    partials.reserve(indices.size());
    fulls.reserve(indices.size());
    for (int idx : indices) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= manifest.records.size())
            throw ArgumentError("load_batch: index " + std::to_string(idx) + " out of range");
        const SamplePair& r = manifest.records[static_cast<std::size_t>(idx)];
        try {
            partials.push_back(voxel::load_grid(manifest.root / r.partial_path));
            fulls.push_back(voxel::load_grid(manifest.root / r.full_path));
        } catch (const std::exception& e) {
            throw IoError("load_batch: record " + r.model_id + "/" +
                          std::to_string(r.view_index) + ": " + e.what());
        }
        const auto d = partials.back().dims();
        if (d.nx != manifest.resolution || !(partials.back().dims() == fulls.back().dims()))
            throw FormatError("load_batch: grid resolution does not match manifest for record " +
                              r.model_id + "/" + std::to_string(r.view_index));
    }
    return {std::move(partials), std::move(fulls)};
}

std::vector<int> shuffled_epoch(const Manifest& manifest, std::uint64_t seed) {
    return util::permutation(manifest.records.size(), seed);
}

std::vector<MeshSource> scan_mesh_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("mesh directory does not exist: " + dir.string());
    std::vector<MeshSource> sources;
    auto add_obj = [&](const std::filesystem::path& file, const std::string& category) {
        if (file.extension() != ".obj") return;
        sources.push_back({category, file.stem().string(), file, std::nullopt});
    };
    std::vector<std::filesystem::path> entries;
    for (const auto& e : std::filesystem::directory_iterator(dir)) entries.push_back(e.path());
    std::sort(entries.begin(), entries.end());
    for (const auto& p : entries) {
        if (std::filesystem::is_directory(p)) {
            std::vector<std::filesystem::path> files;
            for (const auto& f : std::filesystem::directory_iterator(p))
                if (std::filesystem::is_regular_file(f)) files.push_back(f.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) add_obj(f, p.filename().string());
        } else if (std::filesystem::is_regular_file(p)) {
            add_obj(p, dir.filename().string());
        }
    }
    return sources;
}

} // namespace vxc::data
