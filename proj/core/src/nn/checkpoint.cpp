// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>

namespace vxc::nn {

namespace {

constexpr char kMagic[4] = {'V', 'X', 'C', 'P'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open checkpoint for writing: " + path.string());
    }
    void bytes(const void* p, std::size_t n) {
        out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    }
    template <class T> void pod(T v) { bytes(&v, sizeof(T)); }
    void str(const std::string& s) {
        pod<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        bytes(s.data(), s.size());
    }
    void tensor(const Tensor& t) {
        pod<std::uint8_t>(static_cast<std::uint8_t>(t.ndim()));
        for (int i = 0; i < t.ndim(); ++i) pod<std::int32_t>(t.dim(i));
        bytes(t.data(), t.numel() * sizeof(double));
    }
    void named_tensors(const std::vector<std::pair<std::string, Tensor>>& ts) {
        pod<std::uint32_t>(static_cast<std::uint32_t>(ts.size()));
        for (const auto& [name, t] : ts) {
            str(name);
            tensor(t);
        }
    }
    void tensors(const std::vector<Tensor>& ts) {
        pod<std::uint32_t>(static_cast<std::uint32_t>(ts.size()));
        for (const auto& t : ts) tensor(t);
    }
    bool ok() const { return static_cast<bool>(out_); }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open checkpoint: " + path.string());
    }
    void bytes(void* p, std::size_t n) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!in_) throw FormatError("checkpoint: truncated file");
    }
    template <class T> T pod() {
        T v;
        bytes(&v, sizeof(T));
        return v;
    }
    std::string str() {
        const auto n = pod<std::uint32_t>();
        std::string s(n, '\0');
        if (n) bytes(s.data(), n);
        return s;
    }
    Tensor tensor() {
        const int nd = pod<std::uint8_t>();
        Shape shape(static_cast<std::size_t>(nd));
        for (int i = 0; i < nd; ++i) shape[static_cast<std::size_t>(i)] = pod<std::int32_t>();
        Tensor t(shape);
        bytes(t.data(), t.numel() * sizeof(double));
        return t;
    }
    std::vector<std::pair<std::string, Tensor>> named_tensors() {
        const auto n = pod<std::uint32_t>();
        std::vector<std::pair<std::string, Tensor>> ts;
        ts.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            std::string name = str();
            ts.emplace_back(std::move(name), tensor());
        }
        return ts;
    }
    std::vector<Tensor> tensors() {
        const auto n = pod<std::uint32_t>();
        std::vector<Tensor> ts;
        ts.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) ts.push_back(tensor());
        return ts;
    }

private:
    std::ifstream in_;
};

} // namespace

Checkpoint Checkpoint::inference_only() const {
    Checkpoint c = *this;
    c.has_optimizer = false;
    c.adam_g_t = c.adam_d_t = 0;
    c.adam_g_m.clear();
    c.adam_g_v.clear();
    c.adam_d_m.clear();
    c.adam_d_v.clear();
    return c;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    Writer w(path);
    w.bytes(kMagic, 4);
    w.pod<std::uint32_t>(kVersion);
    w.pod<std::uint8_t>(ckpt.has_optimizer ? 1 : 0);
    w.pod<std::int32_t>(ckpt.spec.resolution);
    w.pod<std::int32_t>(ckpt.spec.levels);
    w.pod<std::int32_t>(ckpt.spec.base_channels);
    w.pod<std::int32_t>(ckpt.spec.channel_cap);
    w.pod<std::int32_t>(ckpt.spec.fc_hidden);
    w.pod<std::uint8_t>(ckpt.spec.use_skips ? 1 : 0);
    w.pod<std::uint64_t>(ckpt.spec.seed);
    w.pod<std::int64_t>(ckpt.step);
    w.pod<std::int32_t>(ckpt.epoch);
    w.str(ckpt.rng_state);
    w.named_tensors(ckpt.gen_params);
    w.named_tensors(ckpt.disc_params);
    if (ckpt.has_optimizer) {
        w.pod<std::int64_t>(ckpt.adam_g_t);
        w.tensors(ckpt.adam_g_m);
        w.tensors(ckpt.adam_g_v);
        w.pod<std::int64_t>(ckpt.adam_d_t);
        w.tensors(ckpt.adam_d_m);
        w.tensors(ckpt.adam_d_v);
    }
    if (!w.ok()) throw IoError("checkpoint: short write to " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    Reader r(path);
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("checkpoint: bad magic in " + path.string());
    const auto version = r.pod<std::uint32_t>();
    if (version != kVersion)
        throw FormatError("checkpoint: unsupported version " + std::to_string(version));
    Checkpoint c;
    c.has_optimizer = r.pod<std::uint8_t>() != 0;
    c.spec.resolution = r.pod<std::int32_t>();
    c.spec.levels = r.pod<std::int32_t>();
    c.spec.base_channels = r.pod<std::int32_t>();
    c.spec.channel_cap = r.pod<std::int32_t>();
    c.spec.fc_hidden = r.pod<std::int32_t>();
    c.spec.use_skips = r.pod<std::uint8_t>() != 0;
    c.spec.seed = r.pod<std::uint64_t>();
    c.step = r.pod<std::int64_t>();
    c.epoch = r.pod<std::int32_t>();
    c.rng_state = r.str();
    c.gen_params = r.named_tensors();
    c.disc_params = r.named_tensors();
    if (c.has_optimizer) {
        c.adam_g_t = r.pod<std::int64_t>();
        c.adam_g_m = r.tensors();
        c.adam_g_v = r.tensors();
        c.adam_d_t = r.pod<std::int64_t>();
        c.adam_d_m = r.tensors();
        c.adam_d_v = r.tensors();
    }
    return c;
}

Checkpoint snapshot(const Generator& gen, const Discriminator& disc) {
    Checkpoint c;
    c.spec = gen.spec();
    for (const auto& np : gen.params()) c.gen_params.emplace_back(np.name, np.var.value());
    for (const auto& np : disc.params()) c.disc_params.emplace_back(np.name, np.var.value());
    return c;
}

namespace {

void restore_into(const std::vector<std::pair<std::string, Tensor>>& saved,
                  std::vector<NamedParam>& live, const char* who) {
    if (saved.size() != live.size())
        throw SpecError(std::string("checkpoint: ") + who + " parameter count mismatch");
    for (std::size_t i = 0; i < live.size(); ++i) {
        if (saved[i].first != live[i].name)
            throw SpecError(std::string("checkpoint: ") + who + " parameter name mismatch: " +
                            saved[i].first + " vs " + live[i].name);
        if (!saved[i].second.same_shape(live[i].var.value()))
            throw SpecError(std::string("checkpoint: ") + who + " parameter shape mismatch at " +
                            live[i].name);
        live[i].var.mutable_value() = saved[i].second;
    }
}

} // namespace

void restore_params(const Checkpoint& ckpt, Generator& gen, Discriminator& disc) {
    if (!(ckpt.spec == gen.spec()) || !(ckpt.spec == disc.spec()))
        throw SpecError("checkpoint: model spec mismatch (resolution/levels/channels differ)");
    restore_into(ckpt.gen_params, gen.params(), "generator");
    restore_into(ckpt.disc_params, disc.params(), "discriminator");
}

Generator generator_from_checkpoint(const Checkpoint& ckpt) {
    Generator gen(ckpt.spec);
    if (ckpt.gen_params.size() != gen.params().size())
        throw SpecError("checkpoint: generator parameter count mismatch");
    for (std::size_t i = 0; i < gen.params().size(); ++i) {
        auto& np = gen.params()[i];
        if (ckpt.gen_params[i].first != np.name)
            throw SpecError("checkpoint: generator parameter name mismatch");
        if (!ckpt.gen_params[i].second.same_shape(np.var.value()))
            throw SpecError("checkpoint: generator parameter shape mismatch at " + np.name);
        np.var.mutable_value() = ckpt.gen_params[i].second;
    }
    return gen;
}

} // namespace vxc::nn
