#pragma once

#include "timelot/lottery.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace timelot {

enum class SimMode { sequential, ensemble };

inline const char* to_string(SimMode m) {
    return m == SimMode::sequential ? "sequential" : "ensemble";
}

struct SimConfig {
    std::uint64_t seed = 0;
    std::uint64_t count = 1; // rounds (sequential) or copies (ensemble), >= 1
    SimMode mode = SimMode::sequential;
};

struct SimResult {
    double empirical_rate = 0;
    double analytic_target = 0;
    double abs_error = 0;
    double rel_error = 0;
    std::vector<std::uint64_t> tallies; // per-outcome realisation counts

    bool operator==(const SimResult&) const = default;
};

/// Repeat the lottery `count` times back to back; the empirical rate is
/// total payment over total elapsed time, which converges to time_growth.
SimResult simulate_sequential(const GeneralLottery& lottery, const SimConfig& config);

/// Realise `count` copies of the lottery at once; the empirical rate is the
/// mean per-copy rate, which converges to ensemble_growth.
SimResult simulate_ensemble(const GeneralLottery& lottery, const SimConfig& config);

/// Running estimate at each checkpoint, in one streaming pass over the same
/// draw sequence the full simulation uses. The last entry (at the final
/// checkpoint) is bit-identical to the corresponding SimResult rate.
std::vector<std::pair<std::uint64_t, double>>
convergence_series(const GeneralLottery& lottery, SimMode mode,
                   const std::vector<std::uint64_t>& checkpoints, std::uint64_t seed);

} // namespace timelot
