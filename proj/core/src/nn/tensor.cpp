// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/tensor.hpp"

namespace vxc::nn {

std::string shape_to_string(const Shape& s) {
    std::string r = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) r += ",";
        r += std::to_string(s[i]);
    }
    return r + "]";
}

std::size_t shape_numel(const Shape& s) {
    std::size_t n = 1;
    for (int d : s) {
        if (d <= 0) throw ShapeError("non-positive tensor dimension in " + shape_to_string(s));
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

} // namespace vxc::nn
