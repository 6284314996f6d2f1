#pragma once

#include "timelot/errors.hpp"
#include "timelot/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace timelot {

inline const std::string kDefaultUnit = "unit/time";

/// A certain amount delivered at a certain future time (t0 = 0).
template <class S>
struct TimedPaymentT {
    S amount; // > 0
    S time;   // > 0
    std::string unit;

    TimedPaymentT(S amount_, S time_, std::string unit_ = kDefaultUnit)
        : amount(std::move(amount_)), time(std::move(time_)), unit(std::move(unit_)) {
        if (!(amount > 0))
            throw ValidationError("timed payment: amount must be > 0");
        if (!(time > 0))
            throw ValidationError("timed payment: time must be > 0");
    }
};

/// A certain payment at one of two times: t1 with probability p, else t2.
template <class S>
struct BinaryTimeLotteryT {
    S t1; // 0 < t1 <= t2
    S t2;
    S p; // probability of the earlier payment
    S amount;
    std::string unit;

    BinaryTimeLotteryT(S t1_, S t2_, S p_, S amount_, std::string unit_ = kDefaultUnit)
        : t1(std::move(t1_)), t2(std::move(t2_)), p(std::move(p_)), amount(std::move(amount_)),
          unit(std::move(unit_)) {
        if (!(t1 > 0))
            throw ValidationError("time lottery: t1 must be > 0");
        if (!(t1 <= t2))
            throw ValidationError("time lottery: requires t1 <= t2");
        if (p < 0 || p > 1)
            throw ValidationError("time lottery: p must be in [0, 1]");
        if (!(amount > 0))
            throw ValidationError("time lottery: amount must be > 0");
    }

    /// Expected payment time p*t1 + (1-p)*t2.
    S expected_time() const { return p * t1 + (1 - p) * t2; }

    /// True when the lottery is a single timed payment: t1 = t2 or p in {0, 1}.
    bool degenerate() const { return t1 == t2 || p == 0 || p == 1; }
};

/// One branch of a lottery: receive `amount` at `time` with probability `prob`.
template <class S>
struct OutcomeT {
    S amount; // > 0
    S time;   // > 0
    S prob;   // >= 0

    OutcomeT(S amount_, S time_, S prob_)
        : amount(std::move(amount_)), time(std::move(time_)), prob(std::move(prob_)) {
        if (!(amount > 0))
            throw ValidationError("outcome: amount must be > 0");
        if (!(time > 0))
            throw ValidationError("outcome: time must be > 0");
        if (prob < 0)
            throw ValidationError("outcome: probability must be >= 0");
    }
};

/// Finite probability distribution over (amount, time) outcomes.
/// Closed under mix(); the binary equal-amount case is a time lottery.
template <class S>
class GeneralLotteryT {
public:
    explicit GeneralLotteryT(std::vector<OutcomeT<S>> outcomes, std::string unit = kDefaultUnit)
        : outcomes_(std::move(outcomes)), unit_(std::move(unit)) {
        if (outcomes_.empty())
            throw ValidationError("lottery: needs at least one outcome");
        S total = 0;
        for (const auto& o : outcomes_)
            total += o.prob;
        if constexpr (scalar_traits<S>::exact) {
            if (total != 1)
                throw ValidationError("lottery: probabilities must sum to 1 exactly");
        } else {
            if (std::abs(total - 1.0) > kProbSumAbsTol)
                throw ValidationError("lottery: probabilities must sum to 1 within 1e-12");
        }
    }

    static GeneralLotteryT single(S amount, S time, std::string unit = kDefaultUnit) {
        std::vector<OutcomeT<S>> one;
        one.emplace_back(std::move(amount), std::move(time), S(1));
        return GeneralLotteryT(std::move(one), std::move(unit));
    }

    const std::vector<OutcomeT<S>>& outcomes() const { return outcomes_; }
    const std::string& unit() const { return unit_; }

    S expected_amount() const {
        S sum = 0;
        for (const auto& o : outcomes_)
            sum += o.prob * o.amount;
        return sum;
    }

    S expected_time() const {
        S sum = 0;
        for (const auto& o : outcomes_)
            sum += o.prob * o.time;
        return sum;
    }

private:
    std::vector<OutcomeT<S>> outcomes_;
    std::string unit_;
};

/// The pair of scalar growth rates for one lottery plus their Jensen gap.
template <class S>
struct GrowthSummaryT {
    S time_avg;     // expected payment over expected time
    S ensemble_avg; // probability-weighted mean of per-outcome rates
    S jensen_gap;   // ensemble_avg - time_avg, >= 0
};

using TimedPayment = TimedPaymentT<double>;
using BinaryTimeLottery = BinaryTimeLotteryT<double>;
using Outcome = OutcomeT<double>;
using GeneralLottery = GeneralLotteryT<double>;
using GrowthSummary = GrowthSummaryT<double>;

using TimedPaymentQ = TimedPaymentT<Rational>;
using BinaryTimeLotteryQ = BinaryTimeLotteryT<Rational>;
using OutcomeQ = OutcomeT<Rational>;
using GeneralLotteryQ = GeneralLotteryT<Rational>;
using GrowthSummaryQ = GrowthSummaryT<Rational>;

namespace detail {

template <class S>
void require_same_unit(const std::string& a, const std::string& b, const char* what) {
    if (a != b)
        throw ValidationError(std::string(what) + ": unit labels differ ('" + a + "' vs '" + b +
                              "')");
}

} // namespace detail

/// The riskless lottery paying the same amount at the expected payment time.
template <class S>
TimedPaymentT<S> degenerate_of(const BinaryTimeLotteryT<S>& tl) {
    return TimedPaymentT<S>(tl.amount, tl.expected_time(), tl.unit);
}

/// Growth rate of a timed payment: amount / time.
template <class S>
S timed_payment_growth(const TimedPaymentT<S>& tp) {
    return tp.amount / tp.time;
}

template <class S>
GeneralLotteryT<S> to_general(const BinaryTimeLotteryT<S>& tl) {
    std::vector<OutcomeT<S>> outs;
    if (tl.p > 0)
        outs.emplace_back(tl.amount, tl.t1, tl.p);
    if (tl.p < 1)
        outs.emplace_back(tl.amount, tl.t2, S(1) - tl.p);
    return GeneralLotteryT<S>(std::move(outs), tl.unit);
}

template <class S>
GeneralLotteryT<S> to_general(const TimedPaymentT<S>& tp) {
    return GeneralLotteryT<S>::single(tp.amount, tp.time, tp.unit);
}

/// Ensemble-average growth rate: sum_i p_i * (amount_i / time_i).
template <class S>
S ensemble_growth(const GeneralLotteryT<S>& lot) {
    S sum = 0;
    for (const auto& o : lot.outcomes())
        sum += o.prob * (o.amount / o.time);
    return sum;
}

template <class S>
S ensemble_growth(const BinaryTimeLotteryT<S>& tl) {
    return ensemble_growth(to_general(tl));
}

/// Time-average growth rate: expected payment over expected time.
/// This is the rate experienced under indefinite sequential repetition.
template <class S>
S time_growth(const GeneralLotteryT<S>& lot) {
    return lot.expected_amount() / lot.expected_time();
}

template <class S>
S time_growth(const BinaryTimeLotteryT<S>& tl) {
    return time_growth(to_general(tl));
}

template <class S>
GrowthSummaryT<S> growth_summary(const GeneralLotteryT<S>& lot) {
    GrowthSummaryT<S> s{time_growth(lot), ensemble_growth(lot), S(0)};
    s.jensen_gap = s.ensemble_avg - s.time_avg;
    if constexpr (!scalar_traits<S>::exact) {
        // Jensen guarantees a nonnegative gap; a negative here is rounding
        // residue from two near-equal evaluations and is truncated at zero.
        if (s.jensen_gap < 0)
            s.jensen_gap = 0;
    }
    return s;
}

template <class S>
GrowthSummaryT<S> growth_summary(const BinaryTimeLotteryT<S>& tl) {
    return growth_summary(to_general(tl));
}

/// Probability-weighted combination theta*a + (1-theta)*b.
/// Outcomes with identical (amount, time) keys are merged; zero-probability
/// outcomes are dropped.
template <class S>
GeneralLotteryT<S> mix(const GeneralLotteryT<S>& a, const GeneralLotteryT<S>& b, const S& theta) {
    if (theta < 0 || theta > 1)
        throw ValidationError("mix: theta must be in [0, 1]");
    detail::require_same_unit<S>(a.unit(), b.unit(), "mix");

    std::vector<OutcomeT<S>> merged;
    auto same_key = [](const S& x, const S& y) {
        return scalar_traits<S>::equal(x, y, kMergeRelTol);
    };
    auto add = [&](const OutcomeT<S>& o, const S& weight) {
        const S prob = o.prob * weight;
        if (prob == 0)
            return;
        for (auto& m : merged) {
            if (same_key(m.amount, o.amount) && same_key(m.time, o.time)) {
                m.prob += prob;
                return;
            }
        }
        merged.emplace_back(o.amount, o.time, prob);
    };
    for (const auto& o : a.outcomes())
        add(o, theta);
    for (const auto& o : b.outcomes())
        add(o, S(1) - theta);
    return GeneralLotteryT<S>(std::move(merged), a.unit());
}

/// Time at which growth at rate <g> would deliver the payment:
/// t1*t2 / (t1 + p*(t2 - t1)). Always <= the expected time.
template <class S>
S effective_time(const BinaryTimeLotteryT<S>& tl) {
    return tl.t1 * tl.t2 / (tl.t1 + tl.p * (tl.t2 - tl.t1));
}

/// The multiplier a utility gain would need, over the payment itself, to
/// equate ensemble and time averages: t1*t2 / ((p*t1+(1-p)*t2)*(p*t2+(1-p)*t1)).
/// Lies in (0, 1]; equals 1 exactly on the degenerate boundary.
template <class S>
S kunstgriff_factor(const S& t1, const S& t2, const S& p) {
    if (!(t1 > 0) || !(t2 > 0))
        throw ValidationError("kunstgriff_factor: times must be > 0");
    if (p < 0 || p > 1)
        throw ValidationError("kunstgriff_factor: p must be in [0, 1]");
    return t1 * t2 / ((p * t1 + (1 - p) * t2) * (p * t2 + (1 - p) * t1));
}

template <class S>
struct KunstgriffEntryT {
    S t1, t2, p;
    S factor;
};

template <class S>
struct KunstgriffSweepT {
    std::vector<KunstgriffEntryT<S>> entries;
    S min_factor;
    S max_factor;
    // True when the required multiplier varies over the grid, i.e. it depends
    // on the problem setup rather than on wealth.
    bool setup_dependent;
};

template <class S>
KunstgriffSweepT<S> kunstgriff_sweep(const std::vector<std::array<S, 3>>& grid) {
    if (grid.empty())
        throw ValidationError("kunstgriff_sweep: grid must be nonempty");
    KunstgriffSweepT<S> sweep;
    sweep.entries.reserve(grid.size());
    for (const auto& [t1, t2, p] : grid)
        sweep.entries.push_back({t1, t2, p, kunstgriff_factor(t1, t2, p)});
    sweep.min_factor = sweep.entries.front().factor;
    sweep.max_factor = sweep.entries.front().factor;
    for (const auto& e : sweep.entries) {
        sweep.min_factor = std::min(sweep.min_factor, e.factor);
        sweep.max_factor = std::max(sweep.max_factor, e.factor);
    }
    sweep.setup_dependent = sweep.max_factor - sweep.min_factor > 0;
    return sweep;
}

} // namespace timelot
