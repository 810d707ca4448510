#pragma once

#include <array>
#include <cstdint>

#include "geodev/tensor.hpp"

namespace geodev {

// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Independent counter-based streams under one seed.
enum class Stream : std::uint32_t {
    Noise = 0,
    Initial = 1,
    // Seeded evaluation points for self-checks.
    Sample = 2,
};

// Normal(0, dt) increments for (seed, member, step); a pure function of its
// arguments, so paths can be regenerated and shared across schemes.
Vector gaussian_increments(std::uint64_t seed, std::uint32_t member, std::uint64_t step, int dim,
                           double dt);

// Standard normals / uniforms on (0, 1) for an arbitrary stream.
Vector standard_normals(std::uint64_t seed, Stream stream, std::uint32_t member,
                        std::uint64_t step, int dim);
Vector open_uniforms(std::uint64_t seed, Stream stream, std::uint32_t member, std::uint64_t step,
                     int dim);

}  // namespace geodev
