#include "timelot/simulate.hpp"

#include "timelot/rng.hpp"

#include <cmath>
#include <cstddef>

namespace timelot {

namespace {

// Neumaier compensated accumulator; 10^6+ additions of mixed magnitudes.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

struct Draws {
    explicit Draws(const GeneralLottery& lottery) {
        cumulative.reserve(lottery.outcomes().size());
        double acc = 0;
        for (const auto& o : lottery.outcomes()) {
            acc += o.prob;
            cumulative.push_back(acc);
        }
        // guard against the float budget falling a hair short of 1
        cumulative.back() = 1.0;
    }

    std::size_t pick(double u) const {
        for (std::size_t k = 0; k + 1 < cumulative.size(); ++k)
            if (u < cumulative[k])
                return k;
        return cumulative.size() - 1;
    }

    std::vector<double> cumulative;
};

class Accumulator {
public:
    Accumulator(const GeneralLottery& lottery, SimMode mode)
        : lottery_(lottery), mode_(mode), draws_(lottery),
          tallies_(lottery.outcomes().size(), 0) {}

    void step(std::uint64_t seed, std::uint64_t index) {
        const double u = random_uniform01(seed, /*stream=*/0, index);
        const std::size_t k = draws_.pick(u);
        ++tallies_[k];
        const auto& o = lottery_.outcomes()[k];
        if (mode_ == SimMode::sequential) {
            amounts_.add(o.amount);
            times_.add(o.time);
        } else {
            rates_.add(o.amount / o.time);
        }
        ++n_;
    }

    double rate() const {
        if (mode_ == SimMode::sequential)
            return amounts_.value() / times_.value();
        return rates_.value() / static_cast<double>(n_);
    }

    const std::vector<std::uint64_t>& tallies() const { return tallies_; }

private:
    const GeneralLottery& lottery_;
    SimMode mode_;
    Draws draws_;
    std::vector<std::uint64_t> tallies_;
    CompensatedSum amounts_;
    CompensatedSum times_;
    CompensatedSum rates_;
    std::uint64_t n_ = 0;
};

SimResult run(const GeneralLottery& lottery, const SimConfig& config) {
    if (config.count < 1)
        throw ValidationError("simulate: count must be >= 1");
    Accumulator acc(lottery, config.mode);
    for (std::uint64_t i = 0; i < config.count; ++i)
        acc.step(config.seed, i);

    SimResult result;
    result.empirical_rate = acc.rate();
    result.analytic_target = config.mode == SimMode::sequential ? time_growth(lottery)
                                                                : ensemble_growth(lottery);
    result.abs_error = std::abs(result.empirical_rate - result.analytic_target);
    result.rel_error = result.abs_error / std::abs(result.analytic_target);
    result.tallies = acc.tallies();
    return result;
}

} // namespace

SimResult simulate_sequential(const GeneralLottery& lottery, const SimConfig& config) {
    if (config.mode != SimMode::sequential)
        throw ValidationError("simulate_sequential: config.mode must be sequential");
    return run(lottery, config);
}

SimResult simulate_ensemble(const GeneralLottery& lottery, const SimConfig& config) {
    if (config.mode != SimMode::ensemble)
        throw ValidationError("simulate_ensemble: config.mode must be ensemble");
    return run(lottery, config);
}

std::vector<std::pair<std::uint64_t, double>>
convergence_series(const GeneralLottery& lottery, SimMode mode,
                   const std::vector<std::uint64_t>& checkpoints, std::uint64_t seed) {
    if (checkpoints.empty())
        throw ValidationError("convergence_series: checkpoint list must be nonempty");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1)
            throw ValidationError("convergence_series: checkpoints must be >= 1");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw ValidationError("convergence_series: checkpoints must be strictly ascending");
    }

    std::vector<std::pair<std::uint64_t, double>> series;
    series.reserve(checkpoints.size());
    Accumulator acc(lottery, mode);
    std::size_t next = 0;
    for (std::uint64_t i = 0; i < checkpoints.back(); ++i) {
        acc.step(seed, i);
        if (i + 1 == checkpoints[next]) {
            series.emplace_back(checkpoints[next], acc.rate());
            ++next;
        }
    }
    return series;
}

} // namespace timelot
