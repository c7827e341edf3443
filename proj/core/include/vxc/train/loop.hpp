// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <random>

#include "vxc/data/dataset.hpp"
#include "vxc/loss/objectives.hpp"
#include "vxc/nn/adam.hpp"
#include "vxc/nn/checkpoint.hpp"

namespace vxc::train {

struct TrainSpec {
    int batch_size = 8;
    nn::AdamConfig adam; // beta1 0.9, beta2 0.999, eps 1e-8
    double lr_first_epoch = 5e-4;
    double lr_rest = 1e-4;
    int epochs = 20;
    int max_steps = 0; // 0: run all epochs; otherwise stop after this many steps
    loss::LossWeights weights;
    bool ae_only = false; // reconstruction-only ablation: no critic at all
    double clamp_eps = 1e-7;
    std::uint64_t seed = 0;
    int checkpoint_every_epochs = 1;

    void validate() const;
    double lr_for_epoch(int epoch_zero_based) const {
        return epoch_zero_based == 0 ? lr_first_epoch : lr_rest;
    }
};

/// One row of the append-only CSV train log. A step is one batch: a critic
/// update followed by a generator update (generator only in ae_only mode).
struct StepRecord {
    std::int64_t step = 0;
    int epoch = 0; // 1-based in the log
    double l_d = 0.0;
    double l_ae = 0.0;
    double l_gan_g = 0.0;
    double l_g = 0.0;
    double lr = 0.0;
    double wall_time = 0.0; // seconds since run start

    std::string csv_line() const;
    static const char* csv_header();
};

/// Raised when a loss turns non-finite; the message carries a snapshot of
/// the failing step (step, epoch, losses, batch indices).
struct TrainDivergedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GStepResult {
    double l_g = 0.0, l_ae = 0.0, l_gan_g = 0.0;
};

/// One critic update: minimizes mean(fake) - mean(real) + lambda*GP with a
/// second-order gradient through the penalty. Generator parameters are
/// untouched (the fake batch is produced under NoGrad). Returns the loss.
double train_step_d(nn::Discriminator& disc, nn::Adam& opt_d, const nn::Generator& gen,
                    const nn::Tensor& partial, const nn::Tensor& full,
                    const loss::LossWeights& weights, double lr, std::mt19937_64& rng,
                    double clamp_eps = 1e-7);

/// One generator update: minimizes beta*L_ae + (1-beta)*L_gan_g with the
/// critic frozen. ae_only short-circuits the adversarial term (beta = 1).
GStepResult train_step_g(nn::Generator& gen, nn::Adam& opt_g, const nn::Discriminator& disc,
                         const nn::Tensor& partial, const nn::Tensor& full,
                         const loss::LossWeights& weights, double lr, bool ae_only,
                         double clamp_eps = 1e-7);

struct TrainResult {
    std::vector<StepRecord> log;
    std::filesystem::path last_checkpoint; // empty when out_dir is empty
    std::int64_t steps_run = 0;
};

/// Alternating optimization over shuffled epochs. Deterministic given the
/// seed. When out_dir is non-empty, appends the CSV log and writes
/// checkpoints on the configured cadence. Pass `resume` to continue a run
/// bit-exactly (parameters, Adam state and RNG state are restored).
TrainResult train(nn::Generator& gen, nn::Discriminator& disc, const data::Manifest& manifest,
                  const TrainSpec& spec, const std::filesystem::path& out_dir = {},
                  const nn::Checkpoint* resume = nullptr);

/// Checkpoint capturing the full resumable state of a run.
nn::Checkpoint make_checkpoint(const nn::Generator& gen, const nn::Discriminator& disc,
                               const nn::Adam& opt_g, const nn::Adam& opt_d, std::int64_t step,
                               int epoch, const std::mt19937_64& rng);

} // namespace vxc::train
