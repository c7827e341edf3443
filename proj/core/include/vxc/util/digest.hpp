// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace vxc::util {

/// Running FNV-1a (64-bit) content digest. Used to fingerprint configs,
/// manifests and checkpoints so reports are auditable.
class Digest {
public:
    Digest& bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    Digest& str(std::string_view s) { return bytes(s.data(), s.size()); }
    template <class T> Digest& pod(const T& v) { return bytes(&v, sizeof(T)); }

    std::uint64_t value() const { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t v);

/// Digest of an entire file's bytes. Throws IoError when unreadable.
std::uint64_t digest_file(const std::filesystem::path& path);

} // namespace vxc::util
