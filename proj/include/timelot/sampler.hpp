#pragma once

#include "timelot/lottery.hpp"
#include "timelot/rng.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace timelot {

/// Ranges for random binary lotteries. Times and amounts are drawn
/// log-uniformly to span their two-orders-of-magnitude ranges, probabilities
/// uniformly; everything is rounded to 4 decimal places so the same draw is
/// exactly representable in both numeric backends.
struct SamplerRanges {
    double t_min = 0.1;
    double t_max = 100.0;
    double dx_min = 0.1;
    double dx_max = 1000.0;
    double p_min = 0.01;
    double p_max = 0.99;
};

namespace detail {

inline constexpr int kSampleDecimals = 4;

inline std::int64_t decimal_mantissa(double value) {
    return std::llround(value * 1e4);
}

} // namespace detail

/// Deterministic lottery source: draw i is a pure function of
/// (seed, stream, i), so shards can carve up index ranges freely.
template <class S>
class LotterySampler {
public:
    LotterySampler(SamplerRanges ranges, std::uint64_t seed, std::uint64_t stream = 0)
        : ranges_(ranges), seed_(seed), stream_(stream) {}

    /// Draw #index. `forced_amount` pins the payment (equal-payment samplers).
    BinaryTimeLotteryT<S> binary(std::uint64_t index,
                                 const std::optional<S>& forced_amount = std::nullopt) const {
        // Four sub-draws per lottery, addressed as index*4 + k.
        const double u_t1 = random_uniform01(seed_, stream_, index * 4);
        const double u_t2 = random_uniform01(seed_, stream_, index * 4 + 1);
        const double u_p = random_uniform01(seed_, stream_, index * 4 + 2);
        const double u_dx = random_uniform01(seed_, stream_, index * 4 + 3);

        S t_a = log_uniform(ranges_.t_min, ranges_.t_max, u_t1);
        S t_b = log_uniform(ranges_.t_min, ranges_.t_max, u_t2);
        if (t_b < t_a)
            std::swap(t_a, t_b);
        const S p = uniform(ranges_.p_min, ranges_.p_max, u_p);
        const S dx = forced_amount ? *forced_amount
                                   : log_uniform(ranges_.dx_min, ranges_.dx_max, u_dx);
        return BinaryTimeLotteryT<S>(t_a, t_b, p, dx);
    }

    S amount(std::uint64_t index) const {
        const double u = random_uniform01(seed_, stream_, index * 4 + 3);
        return log_uniform(ranges_.dx_min, ranges_.dx_max, u);
    }

    /// Mixing weight in (0, 1], 4-decimal grid.
    S theta(std::uint64_t index) const {
        const double u = random_uniform01(seed_, stream_ + (1ull << 32), index);
        const auto mantissa = 1 + static_cast<std::int64_t>(u * 9999.0);
        return scalar_traits<S>::from_decimal(mantissa, -detail::kSampleDecimals);
    }

    const SamplerRanges& ranges() const { return ranges_; }

private:
    static S quantized(double value, double lo, double hi) {
        auto mantissa = detail::decimal_mantissa(value);
        mantissa = std::max(mantissa, detail::decimal_mantissa(lo));
        mantissa = std::min(mantissa, detail::decimal_mantissa(hi));
        return scalar_traits<S>::from_decimal(mantissa, -detail::kSampleDecimals);
    }

    static S log_uniform(double lo, double hi, double u) {
        return quantized(lo * std::exp(u * std::log(hi / lo)), lo, hi);
    }

    static S uniform(double lo, double hi, double u) {
        return quantized(lo + u * (hi - lo), lo, hi);
    }

    SamplerRanges ranges_;
    std::uint64_t seed_;
    std::uint64_t stream_;
};

} // namespace timelot
