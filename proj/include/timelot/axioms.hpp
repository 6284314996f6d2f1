#pragma once

#include "timelot/preference.hpp"
#include "timelot/sampler.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace timelot {

/// Triple of binary lotteries plus a mixing weight, the unit of work for
/// independence checking.
template <class S>
struct IndependenceCaseT {
    BinaryTimeLotteryT<S> a;
    BinaryTimeLotteryT<S> b;
    BinaryTimeLotteryT<S> c;
    S theta;
};

/// Configuration for the independence counterexample search.
template <class S>
struct SearchConfigT {
    SamplerRanges ranges{};
    // Restricting to equal payments makes the time approach satisfy
    // independence; leave false to search for violations.
    bool equal_payments = false;
    // Explicit cases checked before the random stream; each consumes budget.
    std::vector<IndependenceCaseT<S>> seeded;
};

using SearchConfig = SearchConfigT<double>;
using SearchConfigQ = SearchConfigT<Rational>;

namespace detail {

// Sample an independence case from draw block `index`: lotteries from
// sub-streams 0..2, theta from the theta stream. a/b ordered so a < b;
// returns nullopt on ties (resampled by the caller via the next index).
template <class S>
std::optional<IndependenceCaseT<S>> sample_independence_case(const SamplerRanges& ranges,
                                                             std::uint64_t seed,
                                                             std::uint64_t index,
                                                             bool equal_payments,
                                                             Approach approach) {
    const LotterySampler<S> s0(ranges, seed, 0);
    const LotterySampler<S> s1(ranges, seed, 1);
    const LotterySampler<S> s2(ranges, seed, 2);
    std::optional<S> forced;
    if (equal_payments)
        forced = s0.amount(index);
    auto a = s0.binary(index, forced);
    auto b = s1.binary(index, forced);
    const auto c = s2.binary(index, forced);
    const S theta = s0.theta(index);

    const S g_a = scalar_growth(to_general(a), approach);
    const S g_b = scalar_growth(to_general(b), approach);
    if (scalar_traits<S>::equal(g_a, g_b, kIndifferenceRelTol))
        return std::nullopt;
    if (g_a > g_b)
        std::swap(a, b);
    return IndependenceCaseT<S>{a, b, c, theta};
}

} // namespace detail

/// Search for independence violations over random unequal-payment triples
/// (or whatever the config prescribes). Returns only the violating reports,
/// in deterministic order for a given seed.
template <class S>
std::vector<IndependenceReportT<S>> independence_counterexample_search(
    const SearchConfigT<S>& config, std::uint64_t budget, std::uint64_t seed,
    Approach approach = Approach::time) {
    if (budget < 1)
        throw ValidationError("counterexample search: budget must be >= 1");

    std::vector<IndependenceReportT<S>> violations;
    std::uint64_t used = 0;

    for (const auto& seeded : config.seeded) {
        if (used >= budget)
            break;
        ++used;
        auto a = to_general(seeded.a);
        auto b = to_general(seeded.b);
        const auto c = to_general(seeded.c);
        const auto ab = compare(a, b, approach);
        if (ab.relation == Relation::indifferent)
            continue;
        if (ab.relation == Relation::prefers_first)
            std::swap(a, b);
        const auto report = independence_check(a, b, c, seeded.theta, approach);
        if (!report.holds)
            violations.push_back(report);
    }

    for (std::uint64_t index = 0; used < budget; ++index, ++used) {
        const auto sampled = detail::sample_independence_case<S>(config.ranges, seed, index,
                                                                 config.equal_payments, approach);
        if (!sampled)
            continue;
        const auto report = independence_check(to_general(sampled->a), to_general(sampled->b),
                                               to_general(sampled->c), sampled->theta, approach);
        if (!report.holds)
            violations.push_back(report);
    }
    return violations;
}

struct AxiomCounts {
    std::uint64_t checked = 0;
    std::uint64_t passed = 0;

    std::uint64_t failed() const { return checked - passed; }
    void tally(bool ok) {
        ++checked;
        if (ok)
            ++passed;
    }
};

/// Pass/fail tallies for the four von Neumann-Morgenstern axioms.
struct AxiomReport {
    Approach approach = Approach::time;
    NumericMode mode = NumericMode::exact_rational;
    bool equal_payments = true; // independence sampler restriction
    AxiomCounts completeness;
    AxiomCounts transitivity;
    AxiomCounts continuity;
    AxiomCounts independence;

    bool all_passed() const {
        return completeness.failed() == 0 && transitivity.failed() == 0 &&
               continuity.failed() == 0 && independence.failed() == 0;
    }
};

/// Check the vNM axioms on random lotteries under one approach.
///
/// Completeness: every pair yields a relation. Transitivity: scalar ordering
/// on triples never cycles. Continuity: the solved weight lies in [0,1] and
/// feeds back to indifference. Independence: mixing with a common third
/// lottery preserves strict preference (in the time approach this is only an
/// axiom for equal payments, which `equal_payments` selects).
template <class S>
AxiomReport axiom_suite(std::uint64_t samples, std::uint64_t seed, Approach approach,
                        bool equal_payments_for_independence = true,
                        const SamplerRanges& ranges = {}) {
    if (samples < 1)
        throw ValidationError("axiom_suite: sample size must be >= 1");

    AxiomReport report;
    report.approach = approach;
    report.mode = scalar_traits<S>::mode;
    report.equal_payments = equal_payments_for_independence;

    const LotterySampler<S> s0(ranges, seed, 0);
    const LotterySampler<S> s1(ranges, seed, 1);
    const LotterySampler<S> s2(ranges, seed, 2);

    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto a = to_general(s0.binary(i));
        const auto b = to_general(s1.binary(i));
        const auto c = to_general(s2.binary(i));

        // Completeness: compare always lands on one of the three relations.
        const auto ab = compare(a, b, approach);
        report.completeness.tally(ab.relation == Relation::prefers_first ||
                                  ab.relation == Relation::indifferent ||
                                  ab.relation == Relation::prefers_second);

        // Transitivity at the scalar level, inherited from real ordering.
        {
            const S g_a = scalar_growth(a, approach);
            const S g_b = scalar_growth(b, approach);
            const S g_c = scalar_growth(c, approach);
            bool ok = true;
            if (g_a < g_b && g_b < g_c)
                ok = g_a < g_c;
            if (g_a == g_b && g_b == g_c)
                ok = ok && g_a == g_c;
            report.transitivity.tally(ok);
        }

        // Continuity: order the triple, solve for theta, feed back through mix.
        {
            const GeneralLotteryT<S>* lo = &a;
            const GeneralLotteryT<S>* mid = &b;
            const GeneralLotteryT<S>* hi = &c;
            auto growth = [&](const GeneralLotteryT<S>* l) { return scalar_growth(*l, approach); };
            if (growth(lo) > growth(mid))
                std::swap(lo, mid);
            if (growth(mid) > growth(hi))
                std::swap(mid, hi);
            if (growth(lo) > growth(mid))
                std::swap(lo, mid);
            if (!scalar_traits<S>::equal(growth(lo), growth(hi), kIndifferenceRelTol)) {
                const S theta = continuity_weight(*lo, *mid, *hi, approach);
                const bool in_range = theta >= 0 && theta <= 1;
                const auto back = compare(mix(*lo, *hi, theta), *mid, approach);
                report.continuity.tally(in_range && back.relation == Relation::indifferent);
            }
        }

        // Independence, with the equal-payment restriction when asked for.
        {
            const auto sampled = detail::sample_independence_case<S>(
                ranges, seed, i, equal_payments_for_independence, approach);
            if (sampled && sampled->theta > 0) {
                const auto rep = independence_check(to_general(sampled->a), to_general(sampled->b),
                                                    to_general(sampled->c), sampled->theta,
                                                    approach);
                report.independence.tally(rep.holds);
            }
        }
    }
    return report;
}

} // namespace timelot
