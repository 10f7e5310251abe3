#include "hrodds/rng.hpp"

namespace hrodds {

namespace {

constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kKeyBump = 0x9E3779B97F4A7C15ULL;  // golden ratio

inline void philox_round(std::uint64_t& c0, std::uint64_t& c1, std::uint64_t key) {
    const unsigned __int128 product =
        static_cast<unsigned __int128>(kMultiplier) * c0;
    const std::uint64_t hi = static_cast<std::uint64_t>(product >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(product);
    c0 = hi ^ key ^ c1;
    c1 = lo;
}

inline double to_open_unit(std::uint64_t w) {
    // 53 significant bits, then centered half a step off the lattice ends so
    // 0 and 1 are unreachable.
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint64_t, 2> philox2x64(std::uint64_t key, std::uint64_t c0,
                                        std::uint64_t c1) {
    for (int round = 0; round < 10; ++round) {
        philox_round(c0, c1, key);
        key += kKeyBump;
    }
    return {c0, c1};
}

double RngStream::u01_at(std::uint64_t index) const {
    return to_open_unit(philox2x64(seed_, index, stream_)[0]);
}

std::pair<double, double> RngStream::u01_pair_at(std::uint64_t index) const {
    const auto block = philox2x64(seed_, index, stream_);
    return {to_open_unit(block[0]), to_open_unit(block[1])};
}

}  // namespace hrodds
