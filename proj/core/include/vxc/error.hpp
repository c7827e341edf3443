// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vxc {

/// Mismatched tensor/grid dimensions between operands.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation applied to a grid of the wrong kind (binary vs probability).
struct KindError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or truncated file content; message carries the byte offset.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument value (out of range, non-positive dimension, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent model/run configuration (resolution vs levels, checkpoint
/// spec mismatch, ...).
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometry input with no usable content (empty mesh).
struct EmptyGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// I/O failure naming the offending path or record.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vxc
