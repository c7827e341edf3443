// SPDX-License-Identifier: Apache-2.0
#include "vxc/train/loop.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vxc/nn/bridge.hpp"
#include "vxc/util/rng.hpp"

namespace vxc::train {

using namespace vxc::nn;

void TrainSpec::validate() const {
    if (batch_size < 1) throw ArgumentError("train spec: batch_size must be >= 1");
    if (!(lr_first_epoch > 0.0) || !(lr_rest > 0.0))
        throw ArgumentError("train spec: learning rates must be positive");
    if (epochs < 1 && max_steps < 1)
        throw ArgumentError("train spec: need epochs >= 1 or max_steps >= 1");
    if (!(clamp_eps > 0.0 && clamp_eps < 0.5))
        throw ArgumentError("train spec: clamp_eps must lie in (0,0.5)");
    if (checkpoint_every_epochs < 1)
        throw ArgumentError("train spec: checkpoint cadence must be >= 1");
    weights.validate();
}

const char* StepRecord::csv_header() { return "step,epoch,l_d,l_ae,l_gan_g,l_g,lr,wall_time"; }

std::string StepRecord::csv_line() const {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%lld,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.6f",
                  static_cast<long long>(step), epoch, l_d, l_ae, l_gan_g, l_g, lr, wall_time);
    return buf;
}

namespace {

std::vector<Variable> param_vars(const std::vector<NamedParam>& params) {
    std::vector<Variable> vs;
    vs.reserve(params.size());
    for (const auto& np : params) vs.push_back(np.var);
    return vs;
}

} // namespace

double train_step_d(Discriminator& disc, Adam& opt_d, const Generator& gen,
                    const Tensor& partial, const Tensor& full,
                    const loss::LossWeights& weights, double lr, std::mt19937_64& rng,
                    double clamp_eps) {
    (void)clamp_eps;
    const int batch = partial.dim(0);
    const Variable cond = Variable::constant(partial);
    const Variable target = Variable::constant(full);

    Variable fake;
    {
        NoGradGuard ng; // the generator is frozen during the critic step
        fake = gen.forward(cond);
    }
    fake = detach(fake);

    const Variable real_lat = disc.forward(cond, target);
    const Variable fake_lat = disc.forward(cond, fake);

    Variable gp = Variable::constant(Tensor::scalar(0.0));
    if (weights.lambda > 0.0) {
        std::vector<double> eps_draws(static_cast<std::size_t>(batch));
        for (auto& e : eps_draws) e = util::uniform01(rng);
        const Variable& endpoint_a =
            weights.gp_interpolant == loss::GpInterpolant::real_fake ? target : cond;
        gp = loss::gradient_penalty(disc, cond, endpoint_a, fake, eps_draws);
    }
    const Variable ld = loss::l_gan_d(real_lat, fake_lat, gp, weights.lambda);

    auto grads = grad(ld, param_vars(disc.params()));
    opt_d.step(grads, lr);
    return ld.scalar();
}

GStepResult train_step_g(Generator& gen, Adam& opt_g, const Discriminator& disc,
                         const Tensor& partial, const Tensor& full,
                         const loss::LossWeights& weights, double lr, bool ae_only,
                         double clamp_eps) {
    const Variable cond = Variable::constant(partial);
    const Variable target = Variable::constant(full);

    const Variable pred = gen.forward(cond);
    const Variable lae = loss::l_ae(pred, target, weights.alpha, clamp_eps);

    GStepResult res;
    Variable lg;
    if (ae_only) {
        lg = lae; // beta forced to 1: pure reconstruction
        res.l_gan_g = 0.0;
    } else {
        const Variable fake_lat = disc.forward(cond, pred);
        const Variable lgg = loss::l_gan_g(fake_lat);
        lg = loss::l_g(lae, lgg, weights.beta);
        res.l_gan_g = lgg.scalar();
    }
    auto grads = grad(lg, param_vars(gen.params()));
    opt_g.step(grads, lr);
    res.l_g = lg.scalar();
    res.l_ae = lae.scalar();
    return res;
}

Checkpoint make_checkpoint(const Generator& gen, const Discriminator& disc, const Adam& opt_g,
                           const Adam& opt_d, std::int64_t step, int epoch,
                           const std::mt19937_64& rng) {
    Checkpoint c = snapshot(gen, disc);
    c.step = step;
    c.epoch = epoch;
    std::ostringstream ss;
    ss << rng;
    c.rng_state = ss.str();
    c.has_optimizer = true;
    c.adam_g_t = opt_g.t();
    c.adam_g_m = opt_g.m();
    c.adam_g_v = opt_g.v();
    c.adam_d_t = opt_d.t();
    c.adam_d_m = opt_d.m();
    c.adam_d_v = opt_d.v();
    return c;
}

TrainResult train(Generator& gen, Discriminator& disc, const data::Manifest& manifest,
                  const TrainSpec& spec, const std::filesystem::path& out_dir,
                  const Checkpoint* resume) {
    spec.validate();
    if (manifest.records.empty()) throw ArgumentError("train: empty manifest");
    if (manifest.resolution != gen.spec().resolution)
        throw SpecError("train: manifest resolution " + std::to_string(manifest.resolution) +
                        " does not match model resolution " +
                        std::to_string(gen.spec().resolution));

    Adam opt_g(gen.params(), spec.adam);
    Adam opt_d(disc.params(), spec.adam);
    std::mt19937_64 rng(util::mix_seed(spec.seed, 0x747261696eULL /* "train" */));
    std::int64_t step = 0;

    if (resume) {
        restore_params(*resume, gen, disc);
        if (!resume->has_optimizer)
            throw SpecError("train: cannot resume from an inference-only checkpoint");
        opt_g.restore(resume->adam_g_t, resume->adam_g_m, resume->adam_g_v);
        opt_d.restore(resume->adam_d_t, resume->adam_d_m, resume->adam_d_v);
        std::istringstream ss(resume->rng_state);
        ss >> rng;
        if (!ss) throw FormatError("train: corrupt RNG state in checkpoint");
        step = resume->step;
    }

    const std::int64_t n_records = static_cast<std::int64_t>(manifest.records.size());
    const std::int64_t steps_per_epoch =
        (n_records + spec.batch_size - 1) / spec.batch_size;
    const std::int64_t total_steps =
        spec.max_steps > 0 ? spec.max_steps
                           : steps_per_epoch * static_cast<std::int64_t>(spec.epochs);

    std::ofstream log_file;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto log_path = out_dir / "train_log.csv";
        const bool fresh = !std::filesystem::exists(log_path) || !resume;
        log_file.open(log_path, fresh ? std::ios::trunc : std::ios::app);
        if (!log_file) throw IoError("train: cannot open log " + log_path.string());
        if (fresh) log_file << StepRecord::csv_header() << '\n';
    }

    TrainResult result;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> perm;
    std::int64_t perm_epoch = -1;

    while (step < total_steps) {
        const std::int64_t epoch = step / steps_per_epoch;
        const std::int64_t pos = step % steps_per_epoch;
        if (epoch != perm_epoch) {
            perm = data::shuffled_epoch(manifest,
                                        util::mix_seed(spec.seed, 0x65 + static_cast<std::uint64_t>(epoch)));
            perm_epoch = epoch;
        }
        const std::int64_t lo = pos * spec.batch_size;
        const std::int64_t hi = std::min<std::int64_t>(lo + spec.batch_size, n_records);
        const std::span<const int> indices(perm.data() + lo, static_cast<std::size_t>(hi - lo));

        auto [partials, fulls] = data::load_batch(manifest, indices);
        const Tensor partial_t = batch_from_grids(partials);
        const Tensor full_t = batch_from_grids(fulls);
        const double lr = spec.lr_for_epoch(static_cast<int>(epoch));

        StepRecord rec;
        rec.epoch = static_cast<int>(epoch) + 1;
        rec.lr = lr;
        if (!spec.ae_only)
            rec.l_d = train_step_d(disc, opt_d, gen, partial_t, full_t, spec.weights, lr, rng,
                                   spec.clamp_eps);
        const GStepResult g = train_step_g(gen, opt_g, disc, partial_t, full_t, spec.weights, lr,
                                           spec.ae_only, spec.clamp_eps);
        rec.l_g = g.l_g;
        rec.l_ae = g.l_ae;
        rec.l_gan_g = g.l_gan_g;
        ++step;
        rec.step = step;
        rec.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        // Divergence aborts with a snapshot of the failing batch.
        for (double v : {rec.l_d, rec.l_ae, rec.l_gan_g, rec.l_g}) {
            if (std::isfinite(v)) continue;
            std::string idx_list;
            for (int i : indices) idx_list += std::to_string(i) + " ";
            throw TrainDivergedError(
                "train: non-finite loss at step " + std::to_string(step) + " epoch " +
                std::to_string(rec.epoch) + " (l_d=" + std::to_string(rec.l_d) +
                " l_ae=" + std::to_string(rec.l_ae) + " l_gan_g=" + std::to_string(rec.l_gan_g) +
                " l_g=" + std::to_string(rec.l_g) + ", batch indices: " + idx_list + ")");
        }

        if (log_file.is_open()) log_file << rec.csv_line() << '\n';
        result.log.push_back(rec);

        const bool epoch_end = (step % steps_per_epoch == 0);
        const bool cadence_hit =
            epoch_end && ((epoch + 1) % spec.checkpoint_every_epochs == 0);
        if (!out_dir.empty() && (cadence_hit || step == total_steps)) {
            const Checkpoint ckpt = make_checkpoint(gen, disc, opt_g, opt_d, step,
                                                    static_cast<int>(epoch) + 1, rng);
            const auto path = out_dir / ("ckpt-step" + std::to_string(step) + ".vxc");
            save_checkpoint(ckpt, path);
            result.last_checkpoint = path;
        }
    }
    result.steps_run = step;
    return result;
}

} // namespace vxc::train
