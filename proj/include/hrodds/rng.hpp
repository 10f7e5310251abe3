#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace hrodds {

// Philox2x64-10 counter-based generator (Salmon, Moraes, Dror & Shaw 2011).
// Output block (c0, c1) under a 64-bit key is a bijection of the 128-bit
// counter, so blocks indexed by distinct (stream, draw) pairs never collide:
// streams are non-overlapping by construction and any draw can be computed
// directly, independent of thread scheduling.
std::array<std::uint64_t, 2> philox2x64(std::uint64_t key, std::uint64_t c0,
                                        std::uint64_t c1);

// One logical stream: key = seed, counter high word = stream id, counter low
// word = draw index. Draws are addressable by index; the sequential interface
// just walks the index.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    // Uniform double in the open interval (0,1): (w >> 11 + 1/2) * 2^-53.
    double u01_at(std::uint64_t index) const;

    // Two independent uniforms from one block, e.g. one subject pair.
    std::pair<double, double> u01_pair_at(std::uint64_t index) const;

    double next_u01() { return u01_at(next_++); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t next_ = 0;
};

// Stream-id layout: every consumer context (a trial simulation, one
// verification grid cell, ...) owns a block of kStreamsPerContext consecutive
// stream ids; roles index within the block.
inline constexpr std::uint64_t kStreamsPerContext = 4;

enum class StreamRole : std::uint64_t {
    ControlArm = 0,
    TreatmentArm = 1,
    Censoring = 2,
    RacePairs = 3,
};

inline std::uint64_t stream_id(std::uint64_t context, StreamRole role) {
    return context * kStreamsPerContext + static_cast<std::uint64_t>(role);
}

}  // namespace hrodds
