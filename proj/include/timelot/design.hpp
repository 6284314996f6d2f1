#pragma once

#include "timelot/preference.hpp"

#include <utility>

namespace timelot {

/// A risky lottery paired with a riskless timed payment, with the machine
/// predictions of both approaches. `disagree` is set when the predictions
/// are strict and opposite. In both predictions the risky lottery is the
/// first argument.
template <class S>
struct DesignedPairT {
    BinaryTimeLotteryT<S> risky;
    TimedPaymentT<S> riskless;
    PreferenceOutcomeT<S> prediction_time;
    PreferenceOutcomeT<S> prediction_ensemble;
    bool disagree;
};

using DesignedPair = DesignedPairT<double>;

namespace detail {

template <class S>
bool opposite_strict(const PreferenceOutcomeT<S>& x, const PreferenceOutcomeT<S>& y) {
    return (x.relation == Relation::prefers_first && y.relation == Relation::prefers_second) ||
           (x.relation == Relation::prefers_second && y.relation == Relation::prefers_first);
}

template <class S>
DesignedPairT<S> designed_pair(const BinaryTimeLotteryT<S>& risky,
                               const TimedPaymentT<S>& riskless) {
    const auto lot = to_general(risky);
    const auto tp = to_general(riskless);
    DesignedPairT<S> pair{risky, riskless, compare(lot, tp, Approach::time),
                          compare(lot, tp, Approach::ensemble), false};
    pair.disagree = opposite_strict(pair.prediction_time, pair.prediction_ensemble);
    return pair;
}

} // namespace detail

/// Payment times for the riskless option at which the two approaches predict
/// opposite choices. For any t strictly between effective_time(tl) and the
/// expected time, the chain  g_time(TL) < g(TP) = g_ens(TP) < g_ens(TL)
/// holds: the time approach picks the sure payment, the ensemble approach
/// the lottery.
template <class S>
std::pair<S, S> disagreement_interval(const BinaryTimeLotteryT<S>& tl) {
    if (tl.degenerate())
        throw EmptyIntervalError("disagreement_interval: lottery is degenerate");
    return {effective_time(tl), tl.expected_time()};
}

/// Setup 1: keep the payment, move the sure payment's time into the
/// disagreement interval. placement in (0, 1) picks the position.
template <class S>
DesignedPairT<S> design_adjust_times(const BinaryTimeLotteryT<S>& tl, const S& placement) {
    if (!(placement > 0) || !(placement < 1))
        throw ValidationError("design_adjust_times: placement must be inside (0, 1)");
    const auto [t_lo, t_hi] = disagreement_interval(tl);
    const S t_tp = t_lo + placement * (t_hi - t_lo);
    return detail::designed_pair(tl, TimedPaymentT<S>(tl.amount, t_tp, tl.unit));
}

/// Setup 2: keep the expected time, scale the sure payment's amount. The
/// predictions disagree exactly when 1 < amount_ratio < g_ens * <t> / amount.
template <class S>
DesignedPairT<S> design_adjust_amounts(const BinaryTimeLotteryT<S>& tl, const S& amount_ratio) {
    if (!(amount_ratio > 0))
        throw ValidationError("design_adjust_amounts: amount_ratio must be > 0");
    if (amount_ratio == 1)
        throw ValidationError("design_adjust_amounts: amount_ratio must differ from 1");
    if (tl.degenerate())
        throw EmptyIntervalError("design_adjust_amounts: lottery is degenerate");
    return detail::designed_pair(
        tl, TimedPaymentT<S>(amount_ratio * tl.amount, tl.expected_time(), tl.unit));
}

} // namespace timelot
