// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>

#include "vxc/geom/mesh.hpp"

namespace vxc::geom {

enum class ProceduralKind { box, table, chair, stool };

ProceduralKind procedural_kind_from_string(const std::string& name);
std::string to_string(ProceduralKind kind);

/// Dimensions of the cuboid assemblies, in object units (meshes are meant to
/// be normalized afterwards). y is up.
struct ProceduralParams {
    double width = 0.9;           // x extent
    double depth = 0.9;           // z extent
    double height = 1.0;          // total y extent
    double slab_thickness = 0.12; // seat/table-top slab
    double leg_thickness = 0.14;
    double seat_height = 0.5;     // y of the seat/top upper face (chair, stool)
    double back_thickness = 0.12; // chair back slab (z)
    double back_height = 0.45;    // chair back rise above the seat
};

/// Deterministic cuboid-assembly meshes: box = 1 cuboid, table/stool = 5,
/// chair = 6 (seat, back, four legs). Each cuboid contributes 8 vertices and
/// 12 triangles. Throws ArgumentError on non-positive dimensions.
TriangleMesh make_procedural_mesh(ProceduralKind kind, const ProceduralParams& params = {});

/// Params jittered around the defaults (deterministic given the engine
/// state); used to build varied toy corpora.
ProceduralParams randomized_params(ProceduralKind kind, std::mt19937_64& rng);

} // namespace vxc::geom
