// SPDX-License-Identifier: Apache-2.0
//
// voxc: operator surface for the shape-completion toolkit.
//   synth        virtual-scan OBJ meshes into paired .vxg grids + manifest
//   train        alternating critic/generator (or reconstruction-only) run
//   eval         IoU/CE report for a checkpoint or a built-in baseline
//   complete     run one partial grid through a trained generator
//   export-mesh  turn a .vxg grid into an inspectable OBJ
//   make-meshes  write a procedural OBJ corpus for quick experiments
//
// Every subcommand accepts --config FILE with flat key=value lines; command
// line flags override file values, file values override defaults. Unknown
// keys are errors. The resolved configuration is printed before acting.
// Exit codes: 0 success, 1 hard error, 2 usage error.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "vxc/data/dataset.hpp"
#include "vxc/eval/harness.hpp"
#include "vxc/geom/export.hpp"
#include "vxc/geom/procedural.hpp"
#include "vxc/nn/bridge.hpp"
#include "vxc/train/loop.hpp"
#include "vxc/util/digest.hpp"
#include "vxc/util/rng.hpp"
#include "vxc/voxel/grid_io.hpp"
#include "vxc/voxel/metrics.hpp"

namespace {

using namespace vxc;

// ---- key=value config plumbing ----

struct KeyTable {
    struct Entry {
        std::string name;
        std::function<void(const std::string&)> set;
        std::function<std::string()> get;
    };
    std::vector<Entry> entries;

    static bool parse_bool(const std::string& v) {
        if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
        if (v == "0" || v == "false" || v == "no" || v == "off") return false;
        throw ArgumentError("bad boolean value '" + v + "'");
    }

    void bind(const std::string& name, int& slot) {
        entries.push_back({name, [&slot](const std::string& v) { slot = std::stoi(v); },
                           [&slot] { return std::to_string(slot); }});
    }
    void bind(const std::string& name, double& slot) {
        entries.push_back({name, [&slot](const std::string& v) { slot = std::stod(v); },
                           [&slot] {
                               char buf[48];
                               std::snprintf(buf, sizeof(buf), "%g", slot);
                               return std::string(buf);
                           }});
    }
    void bind(const std::string& name, bool& slot) {
        entries.push_back({name, [&slot](const std::string& v) { slot = parse_bool(v); },
                           [&slot] { return std::string(slot ? "true" : "false"); }});
    }
    void bind(const std::string& name, std::string& slot) {
        entries.push_back({name, [&slot](const std::string& v) { slot = v; },
                           [&slot] { return slot; }});
    }
    void bind(const std::string& name, std::uint64_t& slot) {
        entries.push_back({name, [&slot](const std::string& v) { slot = std::stoull(v); },
                           [&slot] { return std::to_string(slot); }});
    }

    /// Apply key=value lines; a key whose flag was given on the command line
    /// keeps the flag value. Unknown keys are usage errors.
    void apply_file(const std::filesystem::path& path, const CLI::App& sub) const {
        std::ifstream in(path);
        if (!in) throw ArgumentError("cannot open config file: " + path.string());
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            // trim
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = line.find_last_not_of(" \t\r");
            line = line.substr(b, e - b + 1);
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ArgumentError("config " + path.string() + ":" + std::to_string(line_no) +
                                    ": expected key=value");
            auto trim = [](std::string s) {
                const auto b2 = s.find_first_not_of(" \t");
                const auto e2 = s.find_last_not_of(" \t");
                return b2 == std::string::npos ? std::string() : s.substr(b2, e2 - b2 + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const Entry* entry = nullptr;
            for (const auto& ent : entries)
                if (ent.name == key) entry = &ent;
            if (!entry)
                throw ArgumentError("config " + path.string() + ":" + std::to_string(line_no) +
                                    ": unknown key '" + key + "'");
            const auto* opt = sub.get_option_no_throw("--" + key);
            if (opt && opt->count() > 0) continue; // flag wins
            try {
                entry->set(value);
            } catch (const std::exception& ex) {
                throw ArgumentError("config " + path.string() + ":" + std::to_string(line_no) +
                                    ": bad value for '" + key + "': " + ex.what());
            }
        }
    }

    void print_resolved(const std::string& subcommand) const {
        std::printf("[voxc %s] resolved configuration:\n", subcommand.c_str());
        for (const auto& ent : entries)
            std::printf("  %s = %s\n", ent.name.c_str(), ent.get().c_str());
        std::fflush(stdout);
    }
};

/// "auto" draws a fresh seed and prints it so the run stays reproducible.
std::uint64_t resolve_seed(const std::string& seed_text) {
    if (seed_text != "auto") return std::stoull(seed_text);
    std::random_device rd;
    const std::uint64_t drawn =
        (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
        static_cast<std::uint64_t>(
            std::chrono::steady_clock::now().time_since_epoch().count());
    std::printf("seed = %" PRIu64 " (drawn; pass --seed %" PRIu64 " to reproduce)\n", drawn,
                drawn);
    return drawn;
}

int levels_for_resolution(int res) {
    int levels = 0, n = res;
    while (n > 2 && n % 2 == 0) {
        n /= 2;
        ++levels;
    }
    if (res < 8 || (2 << levels) != res)
        throw ArgumentError("resolution must be a power of two >= 8, got " +
                            std::to_string(res));
    return levels;
}

// ---- synth ----

struct SynthArgs {
    std::string meshes, out;
    int res = 64;
    int views = 5;
    bool solid = false;
    std::string split = "train";
    int jobs = 1;
    int image_size = 128;
    double focal = 140.0;
    double distance = 1.8;
    double min_containment = 0.99;
};

int run_synth(const SynthArgs& a) {
    auto sources = data::scan_mesh_dir(a.meshes);
    if (sources.empty()) {
        std::fprintf(stderr, "error: no .obj files under %s\n", a.meshes.c_str());
        return 1;
    }
    data::SynthesisConfig cfg;
    cfg.resolution = a.res;
    cfg.n_per_axis = a.views;
    cfg.solid = a.solid;
    cfg.min_containment = a.min_containment;
    cfg.camera = geom::PinholeCamera::with_size(a.image_size, a.image_size, a.focal, a.distance);
    const auto result = data::synthesize_dataset(sources, a.split, cfg, a.out, a.jobs);
    for (const auto& f : result.failures) std::fprintf(stderr, "warning: %s\n", f.c_str());
    std::printf("synthesized %zu pairs from %zu meshes -> %s (%zu failures logged)\n",
                result.manifest.records.size(), sources.size(), a.out.c_str(),
                result.failures.size());
    return 0;
}

// ---- train ----

struct TrainArgs {
    std::string data, out, resume;
    int res = 64;
    bool ae_only = false;
    std::string seed = "auto";
    int epochs = 20;
    int max_steps = 0;
    int batch = 8;
    double alpha = 0.85, beta = 0.05, lambda = 10.0;
    double lr1 = 5e-4, lr2 = 1e-4;
    int base_channels = 0; // 0 = scale with resolution (64 at N=64)
    int fc_hidden = 0;
    bool no_skips = false;
    std::string gp_mode = "real_fake";
    int checkpoint_every = 1;
};

int run_train(const TrainArgs& a, std::uint64_t seed) {
    const auto manifest = data::load_manifest(std::filesystem::path(a.data) / "manifest.txt");

    nn::ModelSpec mspec;
    mspec.resolution = a.res;
    mspec.levels = levels_for_resolution(a.res);
    mspec.base_channels = a.base_channels > 0 ? a.base_channels : std::max(4, a.res);
    mspec.channel_cap = 512;
    mspec.fc_hidden = a.fc_hidden;
    mspec.use_skips = !a.no_skips;
    mspec.seed = seed;

    train::TrainSpec tspec;
    tspec.batch_size = a.batch;
    tspec.lr_first_epoch = a.lr1;
    tspec.lr_rest = a.lr2;
    tspec.epochs = a.epochs;
    tspec.max_steps = a.max_steps;
    tspec.weights.alpha = a.alpha;
    tspec.weights.beta = a.ae_only ? 1.0 : a.beta;
    tspec.weights.lambda = a.lambda;
    tspec.weights.gp_interpolant = a.gp_mode == "input_fake" ? loss::GpInterpolant::input_fake
                                                             : loss::GpInterpolant::real_fake;
    tspec.ae_only = a.ae_only;
    tspec.seed = seed;
    tspec.checkpoint_every_epochs = a.checkpoint_every;
    tspec.validate();

    nn::Generator gen(mspec);
    nn::Discriminator disc(mspec);

    std::optional<nn::Checkpoint> resume;
    if (!a.resume.empty()) resume = nn::load_checkpoint(a.resume);

    const auto result = train::train(gen, disc, manifest, tspec, a.out,
                                     resume ? &*resume : nullptr);
    if (!result.last_checkpoint.empty()) {
        const auto ckpt = nn::load_checkpoint(result.last_checkpoint);
        nn::save_checkpoint(ckpt.inference_only(),
                            std::filesystem::path(a.out) / "checkpoint-inference.vxc");
    }
    std::printf("trained %lld steps; last checkpoint: %s\n",
                static_cast<long long>(result.steps_run),
                result.last_checkpoint.empty() ? "(none)"
                                               : result.last_checkpoint.string().c_str());
    if (!result.log.empty()) {
        const auto& last = result.log.back();
        std::printf("final losses: l_d=%.6f l_ae=%.6f l_gan_g=%.6f l_g=%.6f\n", last.l_d,
                    last.l_ae, last.l_gan_g, last.l_g);
    }
    return 0;
}

// ---- eval ----

struct EvalArgs {
    std::string checkpoint, data, out = ".";
    double threshold = 0.5;
    bool self_test = false;
    bool baseline = false;
    int jobs = 1;
};

int run_eval(const EvalArgs& a) {
    const auto manifest = data::load_manifest(std::filesystem::path(a.data) / "manifest.txt");
    std::filesystem::create_directories(a.out);

    eval::EvalReport report;
    if (a.self_test) {
        report = eval::evaluate_baseline(eval::BaselineKind::identity_oracle, manifest,
                                         a.threshold);
    } else if (a.baseline) {
        report = eval::evaluate_baseline(eval::BaselineKind::copy_input, manifest, a.threshold);
    } else {
        if (a.checkpoint.empty())
            throw ArgumentError("--checkpoint is required (or use --self-test / --baseline)");
        const auto ckpt = nn::load_checkpoint(a.checkpoint);
        if (ckpt.spec.resolution != manifest.resolution)
            throw SpecError("checkpoint resolution " + std::to_string(ckpt.spec.resolution) +
                            " does not match dataset resolution " +
                            std::to_string(manifest.resolution));
        const nn::Generator gen = nn::generator_from_checkpoint(ckpt);
        report = eval::evaluate_generator(gen, manifest, a.threshold, 1e-7, a.jobs);
        report.checkpoint_digest = util::to_hex(util::digest_file(a.checkpoint));
        report.predictor = "checkpoint:" + report.checkpoint_digest;
    }
    eval::write_report_csv(report, std::filesystem::path(a.out) / "report.csv");
    const eval::EvalReport reports[] = {report};
    eval::write_report_md(reports, std::filesystem::path(a.out) / "report.md");
    std::printf("%s", eval::report_csv(report).c_str());
    return 0;
}

// ---- complete ----

struct CompleteArgs {
    std::string checkpoint, input, out;
    double binarize = -1.0; // <0: emit probabilities
};

int run_complete(const CompleteArgs& a) {
    const auto ckpt = nn::load_checkpoint(a.checkpoint);
    const nn::Generator gen = nn::generator_from_checkpoint(ckpt);
    const auto input = voxel::load_grid(a.input);
    if (input.kind() != voxel::GridKind::binary)
        throw KindError("complete: input grid must be binary occupancy (threshold it first)");
    if (input.dims().nx != gen.spec().resolution)
        throw SpecError("complete: input resolution " + std::to_string(input.dims().nx) +
                        " does not match checkpoint resolution " +
                        std::to_string(gen.spec().resolution));
    nn::NoGradGuard ng;
    const nn::Tensor batch = nn::batch_from_grids({input});
    const nn::Variable out = gen.forward(nn::Variable::constant(batch));
    voxel::OccupancyGrid pred = nn::grid_from_batch(out.value(), 0);
    if (a.binarize >= 0.0) pred = voxel::threshold(pred, a.binarize);
    voxel::save_grid(pred, a.out);
    std::printf("completed %s -> %s (%s, %zu voxels occupied at 0.5)\n", a.input.c_str(),
                a.out.c_str(), a.binarize >= 0.0 ? "binary" : "probability",
                pred.occupied_count());
    return 0;
}

// ---- export-mesh ----

struct ExportArgs {
    std::string input, out;
    double threshold = 0.5;
};

int run_export(const ExportArgs& a) {
    auto grid = voxel::load_grid(a.input);
    if (grid.kind() == voxel::GridKind::probability) grid = voxel::threshold(grid, a.threshold);
    const auto mesh = geom::mesh_from_grid(grid);
    geom::save_obj(mesh, a.out);
    std::printf("exported %zu vertices / %zu triangles -> %s\n", mesh.vertices.size(),
                mesh.triangles.size(), a.out.c_str());
    return 0;
}

// ---- make-meshes ----

struct MakeMeshesArgs {
    std::string kind = "chair";
    int count = 8;
    std::string out;
    std::string seed = "auto";
    std::string category;
};

int run_make_meshes(const MakeMeshesArgs& a, std::uint64_t seed) {
    static const char* kMixed[] = {"chair", "stool", "table", "box"};
    std::mt19937_64 rng(util::mix_seed(seed, 0x6d657368));
    std::filesystem::create_directories(a.out);
    for (int i = 0; i < a.count; ++i) {
        const std::string kind_name =
            a.kind == "mixed" ? kMixed[i % 4] : a.kind;
        const auto kind = geom::procedural_kind_from_string(kind_name);
        const auto mesh = geom::make_procedural_mesh(kind, geom::randomized_params(kind, rng));
        const std::string category = a.category.empty() ? kind_name : a.category;
        const auto dir = std::filesystem::path(a.out) / category;
        std::filesystem::create_directories(dir);
        geom::save_obj(mesh, dir / (kind_name + std::to_string(i) + ".obj"));
    }
    std::printf("wrote %d meshes under %s\n", a.count, a.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"voxc: single-depth-view 3D shape completion toolkit"};
    app.require_subcommand(1);

    SynthArgs synth;
    TrainArgs train_args;
    EvalArgs eval_args;
    CompleteArgs complete_args;
    ExportArgs export_args;
    MakeMeshesArgs mm;
    std::string config_file;

    // synth
    auto* s = app.add_subcommand("synth", "virtual-scan meshes into paired grids");
    s->add_option("--meshes", synth.meshes, "directory of OBJ meshes (subdirs = categories)")
        ->required();
    s->add_option("--out", synth.out, "output dataset directory")->required();
    s->add_option("--res", synth.res, "grid resolution N");
    s->add_option("--views-per-axis", synth.views, "poses per axis (total = K^3)");
    s->add_flag("--solid", synth.solid, "fill enclosed cavities of ground-truth grids");
    s->add_option("--split", synth.split, "manifest split tag: train|test");
    s->add_option("--jobs", synth.jobs, "worker threads over meshes");
    s->add_option("--image-size", synth.image_size, "depth image width=height in pixels");
    s->add_option("--focal", synth.focal, "focal length in pixels");
    s->add_option("--distance", synth.distance, "camera distance from origin");
    s->add_option("--min-containment", synth.min_containment,
                  "per-pair partial-in-dilated-full threshold");
    KeyTable synth_keys;
    synth_keys.bind("meshes", synth.meshes);
    synth_keys.bind("out", synth.out);
    synth_keys.bind("res", synth.res);
    synth_keys.bind("views-per-axis", synth.views);
    synth_keys.bind("solid", synth.solid);
    synth_keys.bind("split", synth.split);
    synth_keys.bind("jobs", synth.jobs);
    synth_keys.bind("image-size", synth.image_size);
    synth_keys.bind("focal", synth.focal);
    synth_keys.bind("distance", synth.distance);
    synth_keys.bind("min-containment", synth.min_containment);

    // train
    auto* t = app.add_subcommand("train", "train completion networks on a dataset");
    t->add_option("--data", train_args.data, "dataset directory (with manifest.txt)")
        ->required();
    t->add_option("--out", train_args.out, "run directory for logs and checkpoints")
        ->required();
    t->add_option("--res", train_args.res, "grid resolution N");
    t->add_flag("--ae-only", train_args.ae_only,
                "reconstruction-only ablation (forces beta = 1, no critic)");
    t->add_option("--seed", train_args.seed, "master seed (drawn and printed if absent)");
    t->add_option("--epochs", train_args.epochs, "epochs (full passes over the manifest)");
    t->add_option("--max-steps", train_args.max_steps, "stop after this many steps (0 = off)");
    t->add_option("--batch", train_args.batch, "batch size");
    t->add_option("--alpha", train_args.alpha, "false-positive weight of the recon loss");
    t->add_option("--beta", train_args.beta, "joint mix: beta*L_ae + (1-beta)*L_gan_g");
    t->add_option("--lambda", train_args.lambda, "gradient penalty coefficient");
    t->add_option("--lr1", train_args.lr1, "learning rate, first epoch");
    t->add_option("--lr2", train_args.lr2, "learning rate, later epochs");
    t->add_option("--base-channels", train_args.base_channels,
                  "encoder base channels (0 = resolution default)");
    t->add_option("--fc-hidden", train_args.fc_hidden, "bottleneck hidden width (0 = flatten/2)");
    t->add_flag("--no-skips", train_args.no_skips, "ablation: drop skip connections");
    t->add_option("--gp-mode", train_args.gp_mode, "gradient-penalty interpolant: real_fake|input_fake")
        ->check(CLI::IsMember({"real_fake", "input_fake"}));
    t->add_option("--checkpoint-every", train_args.checkpoint_every, "checkpoint cadence in epochs");
    t->add_option("--resume", train_args.resume,
                  "checkpoint to resume from (pass the original --seed so the "
                  "epoch shuffles line up)");
    KeyTable train_keys;
    train_keys.bind("data", train_args.data);
    train_keys.bind("out", train_args.out);
    train_keys.bind("res", train_args.res);
    train_keys.bind("ae-only", train_args.ae_only);
    train_keys.bind("seed", train_args.seed);
    train_keys.bind("epochs", train_args.epochs);
    train_keys.bind("max-steps", train_args.max_steps);
    train_keys.bind("batch", train_args.batch);
    train_keys.bind("alpha", train_args.alpha);
    train_keys.bind("beta", train_args.beta);
    train_keys.bind("lambda", train_args.lambda);
    train_keys.bind("lr1", train_args.lr1);
    train_keys.bind("lr2", train_args.lr2);
    train_keys.bind("base-channels", train_args.base_channels);
    train_keys.bind("fc-hidden", train_args.fc_hidden);
    train_keys.bind("no-skips", train_args.no_skips);
    train_keys.bind("gp-mode", train_args.gp_mode);
    train_keys.bind("checkpoint-every", train_args.checkpoint_every);
    train_keys.bind("resume", train_args.resume);

    // eval
    auto* e = app.add_subcommand("eval", "evaluate a checkpoint or baseline on a dataset");
    e->add_option("--checkpoint", eval_args.checkpoint, "trained checkpoint file");
    e->add_option("--data", eval_args.data, "dataset directory (with manifest.txt)")->required();
    e->add_option("--threshold", eval_args.threshold, "binarization threshold p");
    e->add_option("--out", eval_args.out, "report output directory");
    e->add_flag("--self-test", eval_args.self_test,
                "identity-oracle self test (must give IoU 1)");
    e->add_flag("--baseline", eval_args.baseline, "evaluate the copy-input floor baseline");
    e->add_option("--jobs", eval_args.jobs, "worker threads over test pairs");
    KeyTable eval_keys;
    eval_keys.bind("checkpoint", eval_args.checkpoint);
    eval_keys.bind("data", eval_args.data);
    eval_keys.bind("threshold", eval_args.threshold);
    eval_keys.bind("out", eval_args.out);
    eval_keys.bind("self-test", eval_args.self_test);
    eval_keys.bind("baseline", eval_args.baseline);
    eval_keys.bind("jobs", eval_args.jobs);

    // complete
    auto* c = app.add_subcommand("complete", "complete a single partial grid");
    c->add_option("--checkpoint", complete_args.checkpoint, "trained checkpoint file")
        ->required();
    c->add_option("--input", complete_args.input, "partial .vxg grid (binary)")->required();
    c->add_option("--out", complete_args.out, "output .vxg path")->required();
    c->add_option("--binarize", complete_args.binarize,
                  "threshold the output at this p (default: emit probabilities)");
    KeyTable complete_keys;
    complete_keys.bind("checkpoint", complete_args.checkpoint);
    complete_keys.bind("input", complete_args.input);
    complete_keys.bind("out", complete_args.out);
    complete_keys.bind("binarize", complete_args.binarize);

    // export-mesh
    auto* x = app.add_subcommand("export-mesh", "export a grid as an OBJ of voxel cubes");
    x->add_option("--input", export_args.input, "input .vxg grid")->required();
    x->add_option("--out", export_args.out, "output .obj path")->required();
    x->add_option("--threshold", export_args.threshold,
                  "binarization threshold for probability grids");
    KeyTable export_keys;
    export_keys.bind("input", export_args.input);
    export_keys.bind("out", export_args.out);
    export_keys.bind("threshold", export_args.threshold);

    // make-meshes
    auto* m = app.add_subcommand("make-meshes", "write a procedural OBJ corpus");
    m->add_option("--kind", mm.kind, "box|table|chair|stool|mixed")
        ->check(CLI::IsMember({"box", "table", "chair", "stool", "mixed"}));
    m->add_option("--count", mm.count, "number of meshes");
    m->add_option("--out", mm.out, "output directory")->required();
    m->add_option("--seed", mm.seed, "shape-jitter seed (drawn and printed if absent)");
    m->add_option("--category", mm.category, "category folder name (default: the kind)");
    KeyTable mm_keys;
    mm_keys.bind("kind", mm.kind);
    mm_keys.bind("count", mm.count);
    mm_keys.bind("out", mm.out);
    mm_keys.bind("seed", mm.seed);
    mm_keys.bind("category", mm.category);

    for (auto* sub : {s, t, e, c, x, m})
        sub->add_option("--config", config_file, "key=value config file (flags override it)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& pe) {
        std::fprintf(stderr, "usage error: %s\n", pe.what());
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        const KeyTable* keys = nullptr;
        if (name == "synth") keys = &synth_keys;
        else if (name == "train") keys = &train_keys;
        else if (name == "eval") keys = &eval_keys;
        else if (name == "complete") keys = &complete_keys;
        else if (name == "export-mesh") keys = &export_keys;
        else keys = &mm_keys;

        if (!config_file.empty()) keys->apply_file(config_file, *sub);

        std::uint64_t run_seed = 0;
        if (name == "train") {
            run_seed = resolve_seed(train_args.seed);
            train_args.seed = std::to_string(run_seed);
            if (train_args.ae_only) train_args.beta = 1.0;
        }
        if (name == "make-meshes") {
            run_seed = resolve_seed(mm.seed);
            mm.seed = std::to_string(run_seed);
        }

        keys->print_resolved(name);

        if (name == "synth") return run_synth(synth);
        if (name == "train") return run_train(train_args, run_seed);
        if (name == "eval") return run_eval(eval_args);
        if (name == "complete") return run_complete(complete_args);
        if (name == "export-mesh") return run_export(export_args);
        return run_make_meshes(mm, run_seed);
    } catch (const ArgumentError& ae) {
        std::fprintf(stderr, "usage error: %s\n", ae.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
}
