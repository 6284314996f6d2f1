#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace timelot {

/// Arbitrary-precision rational, the exact backend scalar.
using Rational = boost::multiprecision::cpp_rational;

enum class NumericMode { float64, exact_rational };

// Tolerances used by the float64 backend. The rational backend compares exactly.
inline constexpr double kIndifferenceRelTol = 1e-9;  // preference indifference
inline constexpr double kMergeRelTol = 1e-12;        // outcome-key merging in mix()
inline constexpr double kProbSumAbsTol = 1e-12;      // lottery probability budget

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr NumericMode mode = NumericMode::float64;
    static constexpr bool exact = false;

    static bool equal(double a, double b, double rel_tol) {
        if (a == b)
            return true;
        return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
    }

    /// Value of mantissa * 10^exp10 (rounded to nearest double).
    static double from_decimal(std::int64_t mantissa, int exp10) {
        return static_cast<double>(mantissa) * std::pow(10.0, exp10);
    }

    static double to_double(double v) { return v; }

    /// Shortest decimal string that round-trips the value.
    static std::string to_string(double v) {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        (void)ec;
        return std::string(buf, end);
    }
};

template <>
struct scalar_traits<Rational> {
    static constexpr NumericMode mode = NumericMode::exact_rational;
    static constexpr bool exact = true;

    static bool equal(const Rational& a, const Rational& b, double /*rel_tol*/) {
        return a == b;
    }

    /// Exact value of mantissa * 10^exp10.
    static Rational from_decimal(std::int64_t mantissa, int exp10) {
        boost::multiprecision::cpp_int num = mantissa;
        boost::multiprecision::cpp_int den = 1;
        for (int i = 0; i < exp10; ++i)
            num *= 10;
        for (int i = 0; i > exp10; --i)
            den *= 10;
        return Rational(num, den);
    }

    static double to_double(const Rational& v) { return v.template convert_to<double>(); }

    static std::string to_string(const Rational& v) { return v.str(); }
};

} // namespace timelot
