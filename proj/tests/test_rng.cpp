#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "timelot/rng.hpp"

#include <set>

using namespace timelot;

namespace {

std::array<std::uint32_t, 4> raw_block(std::array<std::uint32_t, 4> ctr,
                                       std::array<std::uint32_t, 2> key) {
    // Reassemble the (seed, stream, index) layout from raw words.
    const std::uint64_t seed = (static_cast<std::uint64_t>(key[1]) << 32) | key[0];
    const std::uint64_t index = (static_cast<std::uint64_t>(ctr[1]) << 32) | ctr[0];
    const std::uint64_t stream = (static_cast<std::uint64_t>(ctr[3]) << 32) | ctr[2];
    return Philox4x32::block(seed, stream, index);
}

} // namespace

TEST_CASE("philox4x32-10 matches the Random123 known-answer vectors") {
    CHECK(raw_block({0, 0, 0, 0}, {0, 0}) ==
          std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(raw_block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(raw_block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("seed/stream/index addressing matches frozen reference draws") {
    CHECK(Philox4x32::block(42, 0, 0) ==
          std::array<std::uint32_t, 4>{0x9ceaf053, 0x77f5493b, 0x12bf50ad, 0x5742b3d7});
    CHECK(Philox4x32::block(42, 0, 1) ==
          std::array<std::uint32_t, 4>{0xfcdb2127, 0x53ba6cfd, 0x838f5a6e, 0x744e06fb});
    CHECK(Philox4x32::block(42, 1, 0) ==
          std::array<std::uint32_t, 4>{0x02933769, 0x2051e913, 0x3b68b038, 0xb62c409c});
    CHECK(Philox4x32::block(7, 3, 123456789) ==
          std::array<std::uint32_t, 4>{0xeb88156e, 0xe8220c2b, 0xa2ba5c5b, 0xefce40d6});

    CHECK(random_uniform01(42, 0, 0) == doctest::Approx(0.6129598811894158).epsilon(1e-15));
    CHECK(random_uniform01(42, 1, 0) == doctest::Approx(0.01005884472426255).epsilon(1e-15));
    CHECK(random_uniform01(7, 3, 123456789) == doctest::Approx(0.9200452228325348).epsilon(1e-15));
}

TEST_CASE("uniform draws stay in [0,1) and distinct streams decorrelate") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const double u = random_uniform01(1234, 0, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        seen.insert(random_u64(1234, 0, i));
    }
    CHECK(seen.size() == 2000);
    CHECK(random_u64(1234, 0, 17) != random_u64(1234, 1, 17));
    CHECK(random_u64(1234, 0, 17) != random_u64(4321, 0, 17));
}

TEST_CASE("stateful wrapper walks the counter") {
    RandomStream stream(99, 5);
    CHECK(stream.next_u64() == random_u64(99, 5, 0));
    CHECK(stream.next_u64() == random_u64(99, 5, 1));
    for (int i = 0; i < 100; ++i) {
        const auto v = stream.next_int(3, 7);
        CHECK(v >= 3);
        CHECK(v <= 7);
    }
}
