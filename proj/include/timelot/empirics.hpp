#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace timelot {

/// One aggregate experiment row: growth rates of the safe option (I) and the
/// risky option (II), the shared time-average rate, the Jensen gap and the
/// observed fraction of risk-averse choices.
struct ChoiceProblemRecord {
    std::string label;
    double g_ens_i = 0;
    double g_ens_ii = 0;
    double g_time = 0;        // common to both options
    double gap = 0;           // g_ens_ii minus the best available time-average rate
    double ratl_fraction = 0; // percentage in [0, 100]
    std::string unit_label;
    std::optional<double> exp_t; // raw expected payment time, when the source has it
    std::optional<double> dx;    // raw payment amount

    bool operator==(const ChoiceProblemRecord&) const = default;
};

enum class DatasetSchema { rates, lotteries };

/// Parse a dataset CSV (UTF-8, comma-separated, header line; an optional
/// leading `# unit: <text>` comment sets the unit label).
///
///   rates schema:     label,g_ens_i,g_ens_ii,g_time,ratl_pct[,exp_t,dx]
///   lotteries schema: label,t1_i,t2_i,p_i,dx_i,t1_ii,t2_ii,p_ii,dx_ii,ratl_pct
///
/// The lotteries schema computes every growth-rate column from the raw
/// option parameters. The gap column is derived as g_ens_ii - g_time, except
/// that records carrying raw (exp_t, dx) fields use the recomputed dx/exp_t
/// in place of the stated g_time (the stated column may disagree with its own
/// raw fields; audit() reports such rows).
std::vector<ChoiceProblemRecord> load_dataset(std::istream& source, DatasetSchema schema);
std::vector<ChoiceProblemRecord> load_dataset(const std::string& csv_text, DatasetSchema schema);

/// Serialize records back to the "rates" schema; numbers round-trip exactly.
std::string emit_rates_csv(const std::vector<ChoiceProblemRecord>& records);

enum class AuditSeverity { rounding, inconsistent };

inline const char* to_string(AuditSeverity s) {
    return s == AuditSeverity::rounding ? "rounding" : "inconsistent";
}

struct AuditFinding {
    std::string label;
    std::string field;
    double stated = 0;
    double recomputed = 0;
    AuditSeverity severity = AuditSeverity::rounding;
};

/// Cross-check stated columns against what recomputes from the rest of the
/// row: g_time against dx/exp_t where raw fields exist, and the gap against
/// g_ens_ii minus the reference time-average rate. Differences within pure
/// print-rounding (0.05, half an ulp at the tables' 0.1 precision) pass
/// silently; up to 0.1 is flagged as `rounding`, beyond as `inconsistent`.
std::vector<AuditFinding> audit(const std::vector<ChoiceProblemRecord>& records);

/// Unweighted ordinary least squares of RATL fraction on the Jensen gap.
struct OLSFit {
    double slope = 0;        // percentage points per rate unit
    double intercept = 0;    // percentage
    double r_squared = 0;    // in [0, 1]
    double residual_std = 0; // with n-2 degrees of freedom
    std::size_t n = 0;
    double x_mean = 0;
    double s_xx = 0; // sum of squared x deviations
};

OLSFit ols_fit(const std::vector<ChoiceProblemRecord>& records);

struct BandPoint {
    double x = 0;
    double y_fit = 0;
    double half_width = 0;
};

/// Pointwise 68% (1 sigma) band for the fitted mean:
/// half_width(x) = residual_std * sqrt(1/n + (x - x_mean)^2 / s_xx).
std::vector<BandPoint> confidence_band(const OLSFit& fit, const std::vector<double>& xs);

enum class FigureFormat { svg, csv };

/// Scatter of (gap, RATL %) with the fitted line and shaded band. SVG output
/// is a standalone SVG 1.1 document with deterministic bytes; CSV emits the
/// plotted series numerically.
void emit_figure(const std::vector<ChoiceProblemRecord>& records, const OLSFit& fit,
                 const std::vector<BandPoint>& band, std::ostream& sink, FigureFormat format);

} // namespace timelot
