#include "geodev/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geodev {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// Two 64-bit words per Philox block, mapped to doubles on (0, 1).
std::array<double, 4> block_uniforms(std::uint64_t seed, Stream stream, std::uint32_t member,
                                     std::uint64_t step, std::uint32_t block) {
    if (step >> 32) throw std::out_of_range("step index exceeds 2^32");
    const std::array<std::uint32_t, 4> counter{block, member, static_cast<std::uint32_t>(step),
                                               static_cast<std::uint32_t>(stream)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                           static_cast<std::uint32_t>(seed >> 32)};
    const auto r = philox4x32(counter, key);
    // 32-bit halves to (0, 1) with 2^-33 offset: never 0, never 1.
    std::array<double, 4> u{};
    for (int i = 0; i < 4; ++i) u[i] = (static_cast<double>(r[i]) + 0.5) * 0x1p-32;
    return u;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

Vector open_uniforms(std::uint64_t seed, Stream stream, std::uint32_t member, std::uint64_t step,
                     int dim) {
    Vector out(dim);
    for (int i = 0; i < dim; i += 4) {
        const auto u = block_uniforms(seed, stream, member, step, static_cast<std::uint32_t>(i / 4));
        for (int j = 0; j < 4 && i + j < dim; ++j) out[i + j] = u[j];
    }
    return out;
}

Vector standard_normals(std::uint64_t seed, Stream stream, std::uint32_t member,
                        std::uint64_t step, int dim) {
    // Box-Muller: each block of four uniforms yields four normals.
    Vector out(dim);
    for (int i = 0; i < dim; i += 4) {
        const auto u = block_uniforms(seed, stream, member, step, static_cast<std::uint32_t>(i / 4));
        for (int pair = 0; pair < 2; ++pair) {
            const double radius = std::sqrt(-2.0 * std::log(u[2 * pair]));
            const double angle = 2.0 * std::numbers::pi * u[2 * pair + 1];
            const int base = i + 2 * pair;
            if (base < dim) out[base] = radius * std::cos(angle);
            if (base + 1 < dim) out[base + 1] = radius * std::sin(angle);
        }
    }
    return out;
}

Vector gaussian_increments(std::uint64_t seed, std::uint32_t member, std::uint64_t step, int dim,
                           double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    return std::sqrt(dt) * standard_normals(seed, Stream::Noise, member, step, dim);
}

}  // namespace geodev
