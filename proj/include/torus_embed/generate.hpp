#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "torus_embed/geometry.hpp"

namespace torus_embed {

enum class InputKind { kRegular, kRandom, kPerturbed };

// Throws InputError for unknown names.
InputKind parse_input_kind(std::string_view name);

// Test inputs, deterministic for a fixed seed:
//   regular   - unit-side regular simplex (seed unused)
//   random    - n points uniform in [-1, 1]^(n-1), resampled until they form
//               a simplex with minimum pairwise distance >= 1e-3
//   perturbed - unit regular simplex plus uniform coordinate noise in
//               [-noise, noise], resampled until it is a simplex
PointSet generate_input(InputKind kind, std::size_t n, std::uint64_t seed, double noise = 0.01);

}  // namespace torus_embed
