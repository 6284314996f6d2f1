#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "timelot/simulate.hpp"

#include <cmath>
#include <numeric>

using namespace timelot;

namespace {

const GeneralLottery kLottery = to_general(BinaryTimeLottery(1, 2, 0.5, 10));

} // namespace

TEST_CASE("degenerate lottery reproduces its rate exactly at any count") {
    const auto single = GeneralLottery::single(8, 2);
    const auto seq = simulate_sequential(single, {42, 1, SimMode::sequential});
    CHECK(seq.empirical_rate == 4.0);
    CHECK(seq.abs_error == 0.0);
    CHECK(seq.tallies == std::vector<std::uint64_t>{1});

    const auto ens = simulate_ensemble(single, {42, 1, SimMode::ensemble});
    CHECK(ens.empirical_rate == 4.0);

    // p = 0: the later outcome is the only one that can realise
    const auto late = to_general(BinaryTimeLottery(1, 2, 0.0, 10));
    const auto res = simulate_sequential(late, {5, 1000, SimMode::sequential});
    CHECK(res.empirical_rate == 5.0);
    CHECK(res.tallies.back() == 1000);
}

TEST_CASE("sequential estimator approaches the time-average rate") {
    const auto res = simulate_sequential(kLottery, {42, 200000, SimMode::sequential});
    CHECK(res.analytic_target == doctest::Approx(20.0 / 3.0));
    CHECK(res.rel_error < 0.01);
    CHECK(std::accumulate(res.tallies.begin(), res.tallies.end(), std::uint64_t{0}) == 200000);
}

TEST_CASE("ensemble estimator approaches the ensemble-average rate") {
    const auto res = simulate_ensemble(kLottery, {42, 200000, SimMode::ensemble});
    CHECK(res.analytic_target == doctest::Approx(7.5));
    CHECK(res.rel_error < 0.01);
}

TEST_CASE("reruns with the same config are bit-identical") {
    const SimConfig config{1234, 50000, SimMode::sequential};
    const auto first = simulate_sequential(kLottery, config);
    const auto second = simulate_sequential(kLottery, config);
    CHECK(first == second);

    const SimConfig econfig{1234, 50000, SimMode::ensemble};
    CHECK(simulate_ensemble(kLottery, econfig) == simulate_ensemble(kLottery, econfig));
}

TEST_CASE("mode mismatch and bad counts are rejected") {
    CHECK_THROWS_AS(simulate_sequential(kLottery, {1, 10, SimMode::ensemble}), ValidationError);
    CHECK_THROWS_AS(simulate_ensemble(kLottery, {1, 10, SimMode::sequential}), ValidationError);
    CHECK_THROWS_AS(simulate_sequential(kLottery, {1, 0, SimMode::sequential}), ValidationError);
}

TEST_CASE("tally frequencies match outcome probabilities at five sigma") {
    const std::uint64_t n = 1000000;
    const auto res = simulate_sequential(kLottery, {271828, n, SimMode::sequential});
    REQUIRE(res.tallies.size() == 2);
    const double expected = 0.5 * static_cast<double>(n);
    const double sigma = std::sqrt(static_cast<double>(n) * 0.5 * 0.5);
    CHECK(std::abs(static_cast<double>(res.tallies[0]) - expected) < 5.0 * sigma);
}

TEST_CASE("convergence series streams to the full-run estimate") {
    const std::vector<std::uint64_t> checkpoints{10, 100, 1000, 20000};
    const auto series = convergence_series(kLottery, SimMode::sequential, checkpoints, 42);
    REQUIRE(series.size() == checkpoints.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        CHECK(series[i].first == checkpoints[i]);

    const auto full = simulate_sequential(kLottery, {42, 20000, SimMode::sequential});
    CHECK(series.back().second == full.empirical_rate); // bit-identical

    // the two modes converge to limits separated by the Jensen gap
    const auto ens_series = convergence_series(kLottery, SimMode::ensemble, {200000}, 42);
    const auto seq_series = convergence_series(kLottery, SimMode::sequential, {200000}, 42);
    CHECK(ens_series.back().second > seq_series.back().second);
    CHECK(ens_series.back().second - seq_series.back().second ==
          doctest::Approx(growth_summary(kLottery).jensen_gap).epsilon(0.05));
}

TEST_CASE("convergence series validates its checkpoints") {
    CHECK_THROWS_AS(convergence_series(kLottery, SimMode::sequential, {}, 1), ValidationError);
    CHECK_THROWS_AS(convergence_series(kLottery, SimMode::sequential, {10, 10}, 1),
                    ValidationError);
    CHECK_THROWS_AS(convergence_series(kLottery, SimMode::sequential, {100, 10}, 1),
                    ValidationError);
    CHECK_THROWS_AS(convergence_series(kLottery, SimMode::sequential, {0}, 1), ValidationError);
}
