// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vxc/nn/model.hpp"

namespace vxc::nn {

// Checkpoint container (.vxc): magic "VXCP", u32 version, u8 has_optimizer,
// ModelSpec fields, u64 step, i32 epoch, serialized RNG state, then named
// parameter tensors for generator and discriminator, then (when present)
// both Adam states. All integers little-endian, tensor payloads f64.

struct Checkpoint {
    ModelSpec spec;
    std::int64_t step = 0;
    int epoch = 0;
    std::string rng_state; // decimal mt19937_64 serialization
    std::vector<std::pair<std::string, Tensor>> gen_params;
    std::vector<std::pair<std::string, Tensor>> disc_params;

    bool has_optimizer = false;
    std::int64_t adam_g_t = 0, adam_d_t = 0;
    std::vector<Tensor> adam_g_m, adam_g_v, adam_d_m, adam_d_v;

    /// Copy of this checkpoint without optimizer state (inference export).
    Checkpoint inference_only() const;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Capture the current parameter values of both networks.
Checkpoint snapshot(const Generator& gen, const Discriminator& disc);

/// Write a checkpoint's parameter tensors back into live networks.
/// Throws SpecError when the specs or parameter sets do not line up.
void restore_params(const Checkpoint& ckpt, Generator& gen, Discriminator& disc);

/// Build a generator directly from a checkpoint (inference path).
Generator generator_from_checkpoint(const Checkpoint& ckpt);

} // namespace vxc::nn
