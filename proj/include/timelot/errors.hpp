#pragma once

#include <stdexcept>
#include <string>

namespace timelot {

/// Invalid input: broken type invariant, malformed data, violated precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Continuity solve where the outer lotteries are indifferent (zero denominator).
class DegenerateOrderingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Disagreement interval requested for a degenerate lottery.
class EmptyIntervalError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Regression on data with zero variance in the predictor.
class DegenerateRegressionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace timelot
