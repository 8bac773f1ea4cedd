// Counter-based random streams (Philox4x32-10).
//
// Every random draw in the engine comes from a Stream keyed by a 64-bit
// value derived from (seed, purpose, index). A stream's output depends only
// on its key and on how many values were drawn from it, so work can be
// scheduled in any order without changing results.

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace vfx::rng {

inline constexpr std::string_view kGeneratorName = "philox4x32-10/v1";

/// One Philox4x32 block with 10 rounds.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to fold (seed, tag, index) into stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream purposes. Values are part of the on-disk reproducibility contract.
enum class Purpose : std::uint64_t {
    spec_sampling = 1,
    effect_sources = 2,
    frame_noise = 3,
    triplet_selection = 4,
};

constexpr std::uint64_t derive_key(std::uint64_t seed, Purpose purpose, std::uint64_t index) {
    return mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(purpose))) + index);
}

class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    Stream(std::uint64_t seed, Purpose purpose, std::uint64_t index) : key_(derive_key(seed, purpose, index)) {}

    std::uint64_t next_u64();
    std::uint32_t next_u32();

    /// Uniform in [0, 1) with 53 bits.
    double uniform01();
    /// Uniform in [lo, hi].
    double uniform(double lo, double hi);
    /// Uniform integer in [lo, hi], unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int used_ = 4;
};

}  // namespace vfx::rng
