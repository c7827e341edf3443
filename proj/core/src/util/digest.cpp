// SPDX-License-Identifier: Apache-2.0
#include "vxc/util/digest.hpp"

#include <cstdio>
#include <fstream>

#include "vxc/error.hpp"

namespace vxc::util {

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

std::string Digest::hex() const { return to_hex(state_); }

std::uint64_t digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file for digest: " + path.string());
    Digest d;
    char buf[1 << 14];
    while (in) {
        in.read(buf, sizeof(buf));
        d.bytes(buf, static_cast<std::size_t>(in.gcount()));
    }
    return d.value();
}

} // namespace vxc::util
