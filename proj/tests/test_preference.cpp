#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "timelot/axioms.hpp"
#include "timelot/preference.hpp"
#include "timelot/sampler.hpp"

using namespace timelot;

namespace {

Rational q(long long num, long long den = 1) {
    return Rational(num, den);
}

const BinaryTimeLottery kTLa(1, 2, 0.5, 10);
const BinaryTimeLottery kTLb(0.5, 2, 0.7, 8);
const BinaryTimeLottery kTLc(2, 4, 0.3, 2);

BinaryTimeLotteryQ rational_tl(const BinaryTimeLottery& tl) {
    auto conv = [](double v) {
        return scalar_traits<Rational>::from_decimal(std::llround(v * 10000), -4);
    };
    return BinaryTimeLotteryQ(conv(tl.t1), conv(tl.t2), conv(tl.p), conv(tl.amount));
}

// Independent oracle: solve time_growth(mix(a,c,theta)) = target by bisection
// on theta. The mixture rate is monotone in theta between the endpoints.
double bisect_theta(const GeneralLottery& a, const GeneralLottery& c, double target) {
    double lo = 0.0, hi = 1.0;
    const double g_lo = time_growth(mix(a, c, 0.0));
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = time_growth(mix(a, c, mid));
        const bool mid_below = g_mid < target;
        const bool increasing_from_lo = g_lo < target;
        if (mid_below == increasing_from_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("compare orders lotteries by the approach's scalar") {
    const auto ab = compare(to_general(kTLa), to_general(kTLb), Approach::time);
    CHECK(ab.relation == Relation::prefers_second);
    CHECK(ab.g_first == doctest::Approx(6.6667).epsilon(1e-4));
    CHECK(ab.g_second == doctest::Approx(8.4211).epsilon(1e-4));

    const auto self = compare(to_general(kTLa), to_general(kTLa), Approach::ensemble);
    CHECK(self.relation == Relation::indifferent);

    const auto vs_degenerate = compare(to_general(kTLa), to_general(degenerate_of(kTLa)),
                                       Approach::ensemble);
    CHECK(vs_degenerate.relation == Relation::prefers_first);
    CHECK(vs_degenerate.g_first == doctest::Approx(7.5));
    CHECK(vs_degenerate.g_second == doctest::Approx(6.6667).epsilon(1e-4));

    CHECK_THROWS_AS(compare(to_general(kTLa), GeneralLottery::single(1, 1, "NTL/mth"),
                            Approach::time),
                    ValidationError);
}

TEST_CASE("classify_pair: RNTL under time, RSTL under ensemble, RNTL on the boundary") {
    CHECK(classify_pair(kTLa, Approach::time) == RiskClass::RNTL);
    CHECK(classify_pair(kTLa, Approach::ensemble) == RiskClass::RSTL);

    const BinaryTimeLottery sure(2, 7, 1.0, 10);
    CHECK(classify_pair(sure, Approach::time) == RiskClass::RNTL);
    CHECK(classify_pair(sure, Approach::ensemble) == RiskClass::RNTL);
}

TEST_CASE("continuity weight, ensemble approach: linear interpolation of scalars") {
    // scalars 1 < 2 < 3 via single-outcome lotteries
    const auto a = GeneralLottery::single(1, 1);
    const auto b = GeneralLottery::single(2, 1);
    const auto c = GeneralLottery::single(3, 1);
    CHECK(continuity_weight(a, b, c, Approach::ensemble) == doctest::Approx(0.5));
    CHECK(continuity_weight(a, a, c, Approach::ensemble) == doctest::Approx(1.0));
    CHECK(continuity_weight(a, c, c, Approach::ensemble) == doctest::Approx(0.0));

    CHECK_THROWS_AS(continuity_weight(c, b, a, Approach::ensemble), ValidationError);
    CHECK_THROWS_AS(continuity_weight(a, a, a, Approach::ensemble), DegenerateOrderingError);
}

TEST_CASE("continuity weight, time approach: matches the bisection oracle") {
    // ordering under the time approach: TLc (0.59) < TLa (6.67) < TLb (8.42)
    const auto lo = to_general(kTLc);
    const auto mid = to_general(kTLa);
    const auto hi = to_general(kTLb);
    const double theta = continuity_weight(lo, mid, hi, Approach::time);
    CHECK(theta == doctest::Approx(5.0 / 67.0).epsilon(1e-12));

    const double oracle = bisect_theta(lo, hi, time_growth(mid));
    CHECK(theta == doctest::Approx(oracle).epsilon(1e-9));

    const auto back = compare(mix(lo, hi, theta), mid, Approach::time);
    CHECK(back.relation == Relation::indifferent);
}

TEST_CASE("continuity weight is exact in the rational backend") {
    const auto lo = to_general(rational_tl(kTLc));
    const auto mid = to_general(rational_tl(kTLa));
    const auto hi = to_general(rational_tl(kTLb));
    const Rational theta = continuity_weight(lo, mid, hi, Approach::time);
    CHECK(theta == q(5, 67));
    CHECK(time_growth(mix(lo, hi, theta)) == time_growth(mid));

    const Rational theta_ens = continuity_weight(lo, mid, hi, Approach::ensemble);
    CHECK(ensemble_growth(mix(lo, hi, theta_ens)) == ensemble_growth(mid));
}

TEST_CASE("independence check reproduces the unequal-payment violation") {
    const auto a = to_general(kTLa);
    const auto b = to_general(kTLb);
    const auto c = to_general(kTLc);

    const auto time_report = independence_check(a, b, c, 0.1, Approach::time);
    CHECK_FALSE(time_report.holds);
    CHECK(time_report.g_mix_a == doctest::Approx(0.87).epsilon(5e-3));
    CHECK(time_report.g_mix_b == doctest::Approx(0.82).epsilon(5e-3));

    const auto ens_report = independence_check(a, b, c, 0.1, Approach::ensemble);
    CHECK(ens_report.holds);

    // equal payments: independence always holds in the time approach
    const auto ea = to_general(BinaryTimeLottery(1, 2, 0.5, 10));
    const auto eb = to_general(BinaryTimeLottery(0.5, 2, 0.7, 10));
    const auto ec = to_general(BinaryTimeLottery(2, 4, 0.3, 10));
    CHECK(independence_check(ea, eb, ec, 0.1, Approach::time).holds);

    CHECK_THROWS_AS(independence_check(b, a, c, 0.1, Approach::time), ValidationError);
    CHECK_THROWS_AS(independence_check(a, b, c, 0.0, Approach::time), ValidationError);
}

TEST_CASE("counterexample search: empty under equal payments, seeded hit, deterministic") {
    SearchConfigQ equal_config;
    equal_config.equal_payments = true;
    const auto none = independence_counterexample_search<Rational>(equal_config, 2000, 99);
    CHECK(none.empty());

    SearchConfigQ seeded_config;
    seeded_config.seeded.push_back({rational_tl(kTLa), rational_tl(kTLb), rational_tl(kTLc),
                                    q(1, 10)});
    const auto seeded = independence_counterexample_search<Rational>(seeded_config, 1, 7);
    REQUIRE(seeded.size() == 1);
    CHECK(seeded.front().g_mix_a == q(28, 10) / q(321, 100));
    CHECK(seeded.front().g_mix_b == q(26, 10) / q(3155, 1000));

    SearchConfig random_config;
    const auto first = independence_counterexample_search<double>(random_config, 3000, 4242);
    const auto second = independence_counterexample_search<double>(random_config, 3000, 4242);
    CHECK(first.size() == second.size());
    CHECK_FALSE(first.empty());
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(first[i].theta == second[i].theta);

    CHECK_THROWS_AS(independence_counterexample_search<double>(random_config, 0, 1),
                    ValidationError);
}

TEST_CASE("property: transitivity of the scalar ordering and completeness of compare") {
    const LotterySampler<Rational> s0({}, 11, 0);
    const LotterySampler<Rational> s1({}, 11, 1);
    const LotterySampler<Rational> s2({}, 11, 2);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const auto a = to_general(s0.binary(i));
        const auto b = to_general(s1.binary(i));
        const auto c = to_general(s2.binary(i));
        for (const auto approach : {Approach::time, Approach::ensemble}) {
            const auto g_a = scalar_growth(a, approach);
            const auto g_b = scalar_growth(b, approach);
            const auto g_c = scalar_growth(c, approach);
            if (g_a < g_b && g_b < g_c)
                CHECK(g_a < g_c);
            const auto rel = compare(a, b, approach).relation;
            CHECK((rel == Relation::prefers_first || rel == Relation::indifferent ||
                   rel == Relation::prefers_second));
        }
    }
}

TEST_CASE("property: classifications across 20k random lotteries") {
    const LotterySampler<Rational> sampler({}, 321);
    for (std::uint64_t i = 0; i < 20000; ++i) {
        const auto tl = sampler.binary(i);
        CHECK(classify_pair(tl, Approach::time) == RiskClass::RNTL);
        const auto expected = tl.degenerate() ? RiskClass::RNTL : RiskClass::RSTL;
        CHECK(classify_pair(tl, Approach::ensemble) == expected);
    }
}
