// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every release-gating property runs here with its
// tolerance pinned in code, one PASS/FAIL line per criterion. Exit code 0
// only when all criteria hold.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/testutil.hpp"
#include "vxc/data/dataset.hpp"
#include "vxc/eval/harness.hpp"
#include "vxc/geom/procedural.hpp"
#include "vxc/geom/scan.hpp"
#include "vxc/loss/objectives.hpp"
#include "vxc/nn/bridge.hpp"
#include "vxc/train/loop.hpp"
#include "vxc/util/rng.hpp"
#include "vxc/voxel/metrics.hpp"
#include "vxc/voxel/morphology.hpp"

using namespace vxc;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED: " + what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---- criterion 1: metric oracle equivalence ----
void criterion_metrics(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1);
    double worst_iou = 0.0, worst_ce = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto pred = testutil::random_probability_grid(4, rng);
        const auto target = testutil::random_binary_grid(4, rng);
        worst_iou = std::max(worst_iou, std::fabs(voxel::iou(pred, target, 0.5) -
                                                  oracle::brute_iou(pred, target, 0.5)));
        worst_ce = std::max(worst_ce,
                            std::fabs(voxel::cross_entropy(pred, target, 1e-7) -
                                      oracle::brute_cross_entropy(pred, target, 1e-7)));
    }
    c.require(worst_iou < 1e-12, "IoU oracle gap " + fmt(worst_iou));
    c.require(worst_ce < 1e-12, "CE oracle gap " + fmt(worst_ce));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 5.0, "runtime " + fmt(secs) + "s < 5s");
    c.note("max gaps iou=" + fmt(worst_iou) + " ce=" + fmt(worst_ce) + " in " + fmt(secs) +
           "s");
}

// ---- criterion 2: weighted-BCE identity + gradient ----
void criterion_weighted_bce(Check& c) {
    std::mt19937_64 rng(2);
    const nn::Shape s{2, 4, 4, 4, 1};
    double worst_identity = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        nn::Tensor pred(s), target(s);
        for (std::size_t i = 0; i < pred.numel(); ++i) {
            pred[i] = util::uniform(rng, 1e-4, 1.0 - 1e-4);
            target[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
        }
        const auto pv = nn::Variable::constant(pred);
        const auto tv = nn::Variable::constant(target);
        const double alpha = util::uniform(rng, 0.05, 0.95);
        const double sum = loss::l_ae(pv, tv, alpha).scalar() +
                           loss::l_ae(pv, tv, 1.0 - alpha).scalar();
        double bce = 0.0;
        for (std::size_t i = 0; i < pred.numel(); ++i) {
            const double q = std::clamp(pred[i], 1e-7, 1.0 - 1e-7);
            bce -= target[i] * std::log(q) + (1.0 - target[i]) * std::log(1.0 - q);
        }
        bce /= static_cast<double>(pred.numel());
        worst_identity = std::max(worst_identity, std::fabs(sum - bce));
    }
    c.require(worst_identity < 1e-10, "BCE identity gap " + fmt(worst_identity));

    nn::Tensor pred(s), target(s);
    for (std::size_t i = 0; i < pred.numel(); ++i) {
        pred[i] = util::uniform(rng, 0.05, 0.95);
        target[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
    }
    nn::Variable pv = nn::Variable::parameter(pred);
    const auto tv = nn::Variable::constant(target);
    auto build = [&] { return loss::l_ae(pv, tv, 0.85); };
    const auto g = nn::grad(build(), {pv});
    const double rel =
        oracle::max_grad_rel_err([&] { return build().scalar(); }, pv, g[0].value(), 1e-6);
    c.require(rel < 1e-4, "l_ae gradient FD rel err " + fmt(rel));
    c.note("identity gap=" + fmt(worst_identity) + " grad rel err=" + fmt(rel));
}

// ---- criterion 3: gradient-penalty analytics ----
void criterion_gradient_penalty(Check& c) {
    std::mt19937_64 rng(3);
    const int n = 27;
    const nn::Shape vol{2, 1, 3, 3, 3};
    nn::Tensor cond(vol), real(vol), fake(vol);
    for (std::size_t i = 0; i < cond.numel(); ++i) {
        cond[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
        real[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
        fake[i] = util::uniform(rng, 0.1, 0.9);
    }
    const auto cv = nn::Variable::constant(cond);
    const auto rv = nn::Variable::constant(real);
    const auto fv = nn::Variable::constant(fake);
    const std::vector<double> eps{0.25, 0.75};

    auto linear_critic = [&](double norm) {
        nn::Tensor w(nn::Shape{1, n});
        for (int i = 0; i < n; ++i) w[std::size_t(i)] = norm / std::sqrt(double(n));
        const auto wv = nn::Variable::parameter(w);
        return loss::CriticFn([wv](const nn::Variable&, const nn::Variable& cand) {
            const int batch = cand.shape()[0];
            const int len = static_cast<int>(cand.value().numel()) / batch;
            return nn::matmul(nn::reshape(cand, {batch, len}), wv, false, true);
        });
    };
    const double gp_unit = loss::gradient_penalty(linear_critic(1.0), cv, rv, fv, eps).scalar();
    c.require(gp_unit < 1e-6, "unit-norm critic GP " + fmt(gp_unit));
    const double gp3 = loss::gradient_penalty(linear_critic(3.0), cv, rv, fv, eps).scalar();
    c.require(std::fabs(gp3 - 4.0) < 1e-5, "norm-3 critic GP " + fmt(gp3));

    // second-order path on an 8^3 toy critic
    const auto spec = nn::ModelSpec::toy(8, 2, 5);
    const nn::Discriminator disc(spec);
    const nn::Shape vol8{2, 1, 8, 8, 8};
    nn::Tensor cond8(vol8), real8(vol8), fake8(vol8);
    for (std::size_t i = 0; i < cond8.numel(); ++i) {
        cond8[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
        real8[i] = util::uniform01(rng) < 0.5 ? 1.0 : 0.0;
        fake8[i] = util::uniform(rng, 0.1, 0.9);
    }
    const auto c8 = nn::Variable::constant(cond8);
    const auto r8 = nn::Variable::constant(real8);
    const auto f8 = nn::Variable::constant(fake8);
    const std::vector<double> eps8{0.4, 0.6};
    auto build = [&] {
        return nn::scale(loss::gradient_penalty(disc, c8, r8, f8, eps8), 10.0);
    };
    std::vector<nn::Variable> vars;
    for (const auto& np : disc.params()) vars.push_back(np.var);
    const auto grads = nn::grad(build(), vars);
    double worst = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i)
        worst = std::max(worst, oracle::max_grad_rel_err([&] { return build().scalar(); },
                                                         vars[i], grads[i].value(), 1e-5, 40,
                                                         300 + i));
    c.require(worst < 1e-3, "second-order lambda*GP FD rel err " + fmt(worst));
    c.note("gp_unit=" + fmt(gp_unit) + " gp3=" + fmt(gp3) + " grad2 rel err=" + fmt(worst));
}

// ---- criterion 4: shape contracts ----
void criterion_shapes(Check& c) {
    std::mt19937_64 rng(4);
    struct Cfg {
        int res, base, expected_latent;
    };
    // full-scale channel schedule at 32^3 and 64^3, toy width at 16^3
    const Cfg cfgs[] = {{16, 8, 256}, {32, 64, 4096}, {64, 64, 4096}};
    for (const auto& cfg : cfgs) {
        const auto spec = nn::ModelSpec::toy(cfg.res, cfg.base, 6);
        c.require(spec.latent_length() == cfg.expected_latent,
                  "latent length at N=" + std::to_string(cfg.res));
        const nn::Generator gen(spec);
        const nn::Discriminator disc(spec);
        nn::Tensor in(nn::Shape{1, 1, cfg.res, cfg.res, cfg.res});
        for (std::size_t i = 0; i < in.numel(); ++i)
            in[i] = util::uniform01(rng) < 0.3 ? 1.0 : 0.0;
        nn::NoGradGuard ng;
        const auto out = gen.forward(nn::Variable::constant(in));
        c.require(out.shape() == in.shape(), "generator dims at N=" + std::to_string(cfg.res));
        const auto lat = disc.forward(nn::Variable::constant(in), nn::Variable::constant(in));
        c.require(lat.shape() == nn::Shape{1, cfg.expected_latent},
                  "latent shape at N=" + std::to_string(cfg.res));
    }

    // sigmoid range over 1000 random forwards (toy scale)
    const auto spec = nn::ModelSpec::toy(16, 8, 7);
    const nn::Generator gen(spec);
    const nn::Discriminator disc(spec);
    nn::NoGradGuard ng;
    bool in_range = true;
    for (int trial = 0; trial < 1000; ++trial) {
        nn::Tensor in(nn::Shape{1, 1, 16, 16, 16});
        for (std::size_t i = 0; i < in.numel(); ++i)
            in[i] = util::uniform01(rng) < util::uniform(rng, 0.05, 0.6) ? 1.0 : 0.0;
        const auto out = (trial % 2 == 0)
                             ? gen.forward(nn::Variable::constant(in))
                             : disc.forward(nn::Variable::constant(in),
                                            nn::Variable::constant(in));
        for (std::size_t i = 0; i < out.value().numel(); ++i)
            in_range = in_range && out.value()[i] > 0.0 && out.value()[i] < 1.0;
    }
    c.require(in_range, "sigmoid outputs strictly inside (0,1) over 1000 forwards");
    c.note("N in {16,32,64} pass; 1000 random forwards in range");
}

// ---- shared toy corpus helpers ----
data::SynthesisResult chair_corpus(const std::filesystem::path& dir, int count,
                                   std::uint64_t seed, const std::string& split,
                                   bool jitter = true) {
    std::vector<data::MeshSource> meshes;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const auto params = jitter ? geom::randomized_params(geom::ProceduralKind::chair, rng)
                                   : geom::ProceduralParams{};
        meshes.push_back({"chair", split + "chair" + std::to_string(i), {},
                          geom::make_procedural_mesh(geom::ProceduralKind::chair, params)});
    }
    data::SynthesisConfig cfg;
    cfg.resolution = 16;
    cfg.n_per_axis = 2;
    return data::synthesize_dataset(meshes, split, cfg, dir);
}

// ---- criterion 5: overfit learnability ----
void criterion_overfit(Check& c, const std::filesystem::path& scratch) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto corpus = chair_corpus(scratch / "overfit", 1, 50, "train", /*jitter=*/false);
    c.require(corpus.manifest.records.size() == 8, "8 fixed pairs");

    const auto spec = nn::ModelSpec::toy(16, 8, 1);
    nn::Generator gen(spec);
    nn::Discriminator disc(spec);
    train::TrainSpec tspec;
    tspec.ae_only = true;
    tspec.weights.beta = 1.0;
    tspec.lr_first_epoch = 1e-3;
    tspec.lr_rest = 1e-3;
    tspec.seed = 1;
    tspec.max_steps = 300;
    vxc::train::train(gen, disc, corpus.manifest, tspec);
    const double iou = eval::evaluate_generator(gen, corpus.manifest, 0.5).overall.mean_iou;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(iou >= 0.9, "training-set mean IoU " + fmt(iou) + " >= 0.9");
    c.require(secs <= 300.0, "runtime " + fmt(secs) + "s <= 300s");
    c.note("IoU=" + fmt(iou) + " in " + fmt(secs) + "s / 300 generator steps");
}

// ---- criterion 6: adversarial stability smoke ----
void criterion_adversarial_smoke(Check& c, const std::filesystem::path& scratch) {
    const auto corpus = chair_corpus(scratch / "smoke", 2, 60, "train");
    const auto spec = nn::ModelSpec::toy(16, 8, 2);
    nn::Generator gen(spec);
    nn::Discriminator disc(spec);
    const auto g0 = nn::params_digest(gen.params());
    const auto d0 = nn::params_digest(disc.params());

    train::TrainSpec tspec; // alpha 0.85, beta 0.05, lambda 10, batch 8
    tspec.seed = 2;
    tspec.max_steps = 200;
    const auto res = vxc::train::train(gen, disc, corpus.manifest, tspec);
    bool finite = res.log.size() == 200;
    for (const auto& r : res.log)
        finite = finite && std::isfinite(r.l_d) && std::isfinite(r.l_ae) &&
                 std::isfinite(r.l_gan_g) && std::isfinite(r.l_g);
    c.require(finite, "all 200 alternating-step losses finite");
    c.require(nn::params_digest(gen.params()) != g0, "generator parameters changed");
    c.require(nn::params_digest(disc.params()) != d0, "critic parameters changed");
    c.note("l_d first=" + fmt(res.log.front().l_d) + " last=" + fmt(res.log.back().l_d));
}

// ---- criterion 7: synthesis invariants ----
void criterion_synthesis(Check& c) {
    c.require(geom::make_view_poses(5).size() == 125, "make_view_poses(5) yields 125 poses");

    std::mt19937_64 rng(7);
    const geom::ProceduralKind kinds[] = {
        geom::ProceduralKind::box, geom::ProceduralKind::table, geom::ProceduralKind::chair,
        geom::ProceduralKind::stool};
    const auto poses = geom::make_view_poses(2); // 8 poses
    const geom::PinholeCamera cam{};
    std::size_t total_partial = 0, inside = 0;
    bool partiality = true;
    for (int m = 0; m < 20; ++m) {
        const auto kind = kinds[m % 4];
        const auto mesh = geom::normalize_mesh(
            geom::make_procedural_mesh(kind, geom::randomized_params(kind, rng)));
        for (const auto& pose : poses) {
            const auto depth = geom::render_depth(mesh, pose, cam);
            const auto partial = geom::depth_to_partial_grid(depth, pose, cam, 16);
            const auto full = geom::voxelize_surface(mesh, pose, 16);
            const auto tolerant = voxel::dilate(full, 1);
            for (std::size_t i = 0; i < partial.voxel_count(); ++i) {
                if (partial.values()[i] == 0.0f) continue;
                ++total_partial;
                if (tolerant.values()[i] != 0.0f) ++inside;
            }
            partiality = partiality && partial.occupied_count() < full.occupied_count();
        }
    }
    const double frac = total_partial == 0 ? 1.0 : double(inside) / double(total_partial);
    c.require(frac >= 0.99, "containment fraction " + fmt(frac) + " >= 0.99");
    c.require(partiality, "|partial| < |full| for every pose");
    c.note("containment=" + fmt(frac) + " over " + std::to_string(total_partial) + " voxels");
}

// ---- criterion 8: determinism ----
void criterion_determinism(Check& c, const std::filesystem::path& scratch) {
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    // bitwise-identical manifests
    const auto s1 = chair_corpus(scratch / "det1", 2, 80, "train");
    chair_corpus(scratch / "det2", 2, 80, "train");
    c.require(slurp(scratch / "det1/manifest.txt") == slurp(scratch / "det2/manifest.txt"),
              "manifest files bitwise identical");

    // identical first-10-step loss logs (adversarial: epsilon draws included;
    // wall_time is the only column allowed to differ)
    auto run_log = [&](const std::filesystem::path& out) {
        const auto spec = nn::ModelSpec::toy(16, 4, 8);
        nn::Generator gen(spec);
        nn::Discriminator disc(spec);
        train::TrainSpec tspec;
        tspec.seed = 8;
        tspec.max_steps = 10;
        return vxc::train::train(gen, disc, s1.manifest, tspec, out);
    };
    const auto r1 = run_log(scratch / "detrun1");
    const auto r2 = run_log(scratch / "detrun2");
    bool logs_equal = r1.log.size() == 10 && r2.log.size() == 10;
    for (std::size_t i = 0; logs_equal && i < 10; ++i)
        logs_equal = r1.log[i].l_d == r2.log[i].l_d && r1.log[i].l_ae == r2.log[i].l_ae &&
                     r1.log[i].l_gan_g == r2.log[i].l_gan_g && r1.log[i].l_g == r2.log[i].l_g &&
                     r1.log[i].lr == r2.log[i].lr;
    c.require(logs_equal, "first-10-step loss logs identical");

    // bitwise-identical evaluation reports
    const auto spec = nn::ModelSpec::toy(16, 4, 9);
    const nn::Generator gen(spec);
    const auto e1 = eval::evaluate_generator(gen, s1.manifest, 0.5);
    const auto e2 = eval::evaluate_generator(gen, s1.manifest, 0.5);
    c.require(eval::report_csv(e1) == eval::report_csv(e2), "evaluation reports identical");
    c.note("manifests, 10-step logs and reports reproduce bitwise");
}

// ---- criterion 9: end-to-end directional check ----
void criterion_end_to_end(Check& c, const std::filesystem::path& scratch) {
    const auto t0 = std::chrono::steady_clock::now();
    auto train_set = chair_corpus(scratch / "e2e_train", 9, 11, "train");
    c.require(train_set.manifest.records.size() >= 64, "at least 64 training candidates");
    train_set.manifest.records.resize(64); // the fixed 64-pair corpus
    const auto test_set = chair_corpus(scratch / "e2e_test", 2, 77, "test");

    const auto spec = nn::ModelSpec::toy(16, 8, 3);
    nn::Generator gen(spec);
    nn::Discriminator disc(spec);
    train::TrainSpec tspec;
    tspec.ae_only = true; // the reconstruction-only variant of the model
    tspec.weights.beta = 1.0;
    tspec.lr_first_epoch = 1e-3;
    tspec.lr_rest = 1e-3;
    tspec.seed = 3;
    tspec.max_steps = 2000;
    vxc::train::train(gen, disc, train_set.manifest, tspec);

    const double model_iou =
        eval::evaluate_generator(gen, test_set.manifest, 0.5).overall.mean_iou;
    const double baseline_iou =
        eval::evaluate_baseline(eval::BaselineKind::copy_input, test_set.manifest, 0.5)
            .overall.mean_iou;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(model_iou - baseline_iou >= 0.10,
              "held-out margin " + fmt(model_iou - baseline_iou) + " >= 0.10");
    c.require(secs <= 1800.0, "runtime " + fmt(secs) + "s <= 1800s");
    c.note("model IoU=" + fmt(model_iou) + " baseline IoU=" + fmt(baseline_iou) +
           " margin=" + fmt(model_iou - baseline_iou) + " in " + fmt(secs) + "s");
}

} // namespace

int main() {
    testutil::TempDir scratch("acceptance");
    struct Entry {
        int id;
        const char* title;
        std::function<void(Check&)> run;
    };
    const std::vector<Entry> criteria = {
        {1, "metric oracle equivalence", [&](Check& c) { criterion_metrics(c); }},
        {2, "weighted-BCE identity and gradient", [&](Check& c) { criterion_weighted_bce(c); }},
        {3, "gradient-penalty analytics", [&](Check& c) { criterion_gradient_penalty(c); }},
        {4, "shape contracts", [&](Check& c) { criterion_shapes(c); }},
        {5, "overfit learnability", [&](Check& c) { criterion_overfit(c, scratch.path()); }},
        {6, "adversarial stability smoke",
         [&](Check& c) { criterion_adversarial_smoke(c, scratch.path()); }},
        {7, "synthesis invariants", [&](Check& c) { criterion_synthesis(c); }},
        {8, "determinism", [&](Check& c) { criterion_determinism(c, scratch.path()); }},
        {9, "end-to-end directional check",
         [&](Check& c) { criterion_end_to_end(c, scratch.path()); }},
    };

    int failures = 0;
    for (const auto& entry : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            entry.run(check);
        } catch (const std::exception& e) {
            check.ok = false;
            check.note(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", check.ok ? "PASS" : "FAIL", entry.id,
                    entry.title, check.detail.c_str(), secs);
        std::fflush(stdout);
        if (!check.ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
