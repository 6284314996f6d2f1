#pragma once

#include "timelot/lottery.hpp"

#include <array>
#include <string>

namespace timelot {

/// Which scalar collapses the random growth rate: the time-average rate
/// (sequential repetition) or the ensemble-average rate (expected value).
enum class Approach { time, ensemble };

inline const char* to_string(Approach a) {
    return a == Approach::time ? "time" : "ensemble";
}

enum class Relation { prefers_first, indifferent, prefers_second };

inline const char* to_string(Relation r) {
    switch (r) {
    case Relation::prefers_first: return "prefers_first";
    case Relation::indifferent: return "indifferent";
    default: return "prefers_second";
    }
}

/// Risk preference over time lotteries: prefer the degenerate lottery,
/// indifferent, or prefer the risky one.
enum class RiskClass { RATL, RNTL, RSTL };

inline const char* to_string(RiskClass c) {
    switch (c) {
    case RiskClass::RATL: return "RATL";
    case RiskClass::RNTL: return "RNTL";
    default: return "RSTL";
    }
}

template <class S>
struct PreferenceOutcomeT {
    Relation relation;
    S g_first;
    S g_second;
};

using PreferenceOutcome = PreferenceOutcomeT<double>;

/// The approach's scalar criterion for one lottery.
template <class S>
S scalar_growth(const GeneralLotteryT<S>& lot, Approach approach) {
    return approach == Approach::time ? time_growth(lot) : ensemble_growth(lot);
}

/// Growth-optimal preference: order two lotteries by the approach's scalar.
/// Indifference is exact equality in rational mode and relative agreement
/// within 1e-9 in float mode. Never breaks ties.
template <class S>
PreferenceOutcomeT<S> compare(const GeneralLotteryT<S>& a, const GeneralLotteryT<S>& b,
                              Approach approach) {
    detail::require_same_unit<S>(a.unit(), b.unit(), "compare");
    PreferenceOutcomeT<S> out{Relation::indifferent, scalar_growth(a, approach),
                              scalar_growth(b, approach)};
    if (scalar_traits<S>::equal(out.g_first, out.g_second, kIndifferenceRelTol))
        out.relation = Relation::indifferent;
    else if (out.g_first > out.g_second)
        out.relation = Relation::prefers_first;
    else
        out.relation = Relation::prefers_second;
    return out;
}

/// Classify a binary lottery against its own degenerate lottery.
template <class S>
RiskClass classify_pair(const BinaryTimeLotteryT<S>& tl, Approach approach) {
    const auto outcome = compare(to_general(tl), to_general(degenerate_of(tl)), approach);
    switch (outcome.relation) {
    case Relation::prefers_first: return RiskClass::RSTL;
    case Relation::prefers_second: return RiskClass::RATL;
    default: return RiskClass::RNTL;
    }
}

/// Weight theta such that mix(a, c, theta) ~ b under the approach.
///
/// Requires g(a) <= g(b) <= g(c) with g(a) < g(c) strictly. Closed forms:
///   ensemble:  theta = (g_c - g_b) / (g_c - g_a)
///   time:      theta = (Xc*Tb - Tc*Xb) / (Tb*(Xc - Xa) + Xb*(Ta - Tc))
/// with X = expected amount and T = expected time of each lottery.
template <class S>
S continuity_weight(const GeneralLotteryT<S>& a, const GeneralLotteryT<S>& b,
                    const GeneralLotteryT<S>& c, Approach approach) {
    detail::require_same_unit<S>(a.unit(), b.unit(), "continuity_weight");
    detail::require_same_unit<S>(a.unit(), c.unit(), "continuity_weight");
    const S g_a = scalar_growth(a, approach);
    const S g_b = scalar_growth(b, approach);
    const S g_c = scalar_growth(c, approach);
    const bool a_eq_c = scalar_traits<S>::equal(g_a, g_c, kIndifferenceRelTol);
    if (a_eq_c)
        throw DegenerateOrderingError("continuity_weight: outer lotteries are indifferent");
    const bool ab_ok = g_a <= g_b || scalar_traits<S>::equal(g_a, g_b, kIndifferenceRelTol);
    const bool bc_ok = g_b <= g_c || scalar_traits<S>::equal(g_b, g_c, kIndifferenceRelTol);
    if (!ab_ok || !bc_ok)
        throw ValidationError("continuity_weight: requires ordering a <= b <= c");

    S theta;
    if (approach == Approach::ensemble) {
        theta = (g_c - g_b) / (g_c - g_a);
    } else {
        const S xa = a.expected_amount(), ta = a.expected_time();
        const S xb = b.expected_amount(), tb = b.expected_time();
        const S xc = c.expected_amount(), tc = c.expected_time();
        theta = (xc * tb - tc * xb) / (tb * (xc - xa) + xb * (ta - tc));
    }
    if constexpr (!scalar_traits<S>::exact) {
        theta = std::clamp(theta, 0.0, 1.0);
    }
    return theta;
}

/// One independence check: does mix(b, c, theta) stay preferred to
/// mix(a, c, theta) given a < b?
template <class S>
struct IndependenceReportT {
    bool holds;
    S theta;
    S g_mix_a; // rate of theta*a + (1-theta)*c
    S g_mix_b; // rate of theta*b + (1-theta)*c
    std::array<GeneralLotteryT<S>, 3> triple;
};

using IndependenceReport = IndependenceReportT<double>;

template <class S>
IndependenceReportT<S> independence_check(const GeneralLotteryT<S>& a, const GeneralLotteryT<S>& b,
                                          const GeneralLotteryT<S>& c, const S& theta,
                                          Approach approach) {
    if (!(theta > 0) || theta > 1)
        throw ValidationError("independence_check: theta must be in (0, 1]");
    const auto ab = compare(a, b, approach);
    if (ab.relation != Relation::prefers_second)
        throw ValidationError("independence_check: requires a strictly below b");
    const auto mixed = compare(mix(b, c, theta), mix(a, c, theta), approach);
    return IndependenceReportT<S>{mixed.relation == Relation::prefers_first, theta,
                                  mixed.g_second, mixed.g_first, {a, b, c}};
}

} // namespace timelot
