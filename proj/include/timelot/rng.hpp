#pragma once

#include <array>
#include <cstdint>

namespace timelot {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11).
//
// Stateless: output is a pure function of (seed, stream, counter). The
// 64-bit seed forms the key; the counter block is {index, stream}, so
// every (stream, index) pair addresses an independent 128-bit block.
// Substreams and random access come for free, which is what makes
// sharded runs reproducible regardless of evaluation order.
class Philox4x32 {
public:
    static std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                              std::uint64_t index) {
        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(index),
            static_cast<std::uint32_t>(index >> 32),
            static_cast<std::uint32_t>(stream),
            static_cast<std::uint32_t>(stream >> 32),
        };
        std::array<std::uint32_t, 2> key = {
            static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32),
        };
        for (int round = 0; round < 10; ++round) {
            ctr = bumped(ctr, key);
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMult0 = 0xD2511F53;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    static std::array<std::uint32_t, 4> bumped(const std::array<std::uint32_t, 4>& ctr,
                                               const std::array<std::uint32_t, 2>& key) {
        const std::uint64_t prod0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
        const std::uint64_t prod1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
        return {
            static_cast<std::uint32_t>(prod1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<std::uint32_t>(prod1),
            static_cast<std::uint32_t>(prod0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<std::uint32_t>(prod0),
        };
    }
};

/// 64 bits from block (seed, stream, index).
inline std::uint64_t random_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto words = Philox4x32::block(seed, stream, index);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

/// Uniform double in [0, 1) with 53 random bits, addressed by (seed, stream, index).
inline double random_uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return static_cast<double>(random_u64(seed, stream, index) >> 11) * 0x1.0p-53;
}

/// Stateful convenience wrapper over the counter-based core.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() { return random_u64(seed_, stream_, index_++); }
    double next_uniform01() { return random_uniform01(seed_, stream_, index_++); }

    /// Uniform integer in [lo, hi] via rejection-free scaled draw.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(
                        static_cast<std::uint64_t>(next_uniform01() * static_cast<double>(span)));
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
};

} // namespace timelot
