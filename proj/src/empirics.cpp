#include "timelot/empirics.hpp"

#include "timelot/errors.hpp"
#include "timelot/lottery.hpp"
#include "timelot/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace timelot {

namespace {

constexpr double kPrintHalfUlp = 0.05; // tables print one decimal
constexpr double kRoundingTol = 0.1;   // 0.05 + half-ulp of the printed precision

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string text = trimmed(raw);
    double value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty())
        throw ValidationError("dataset row " + std::to_string(row) + ", column '" + column +
                              "': not a number: '" + raw + "'");
    return value;
}

struct Header {
    std::vector<std::string> columns;

    std::size_t index_of(const std::string& name) const {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            throw ValidationError("dataset header: missing column '" + name + "'");
        return static_cast<std::size_t>(it - columns.begin());
    }

    bool has(const std::string& name) const {
        return std::find(columns.begin(), columns.end(), name) != columns.end();
    }
};

double field(const std::vector<std::string>& cells, const Header& header,
             const std::string& name, std::size_t row) {
    const std::size_t idx = header.index_of(name);
    if (idx >= cells.size())
        throw ValidationError("dataset row " + std::to_string(row) + ": missing column '" + name +
                              "'");
    return parse_number(cells[idx], row, name);
}

void check_percentage(double value, std::size_t row) {
    if (value < 0 || value > 100)
        throw ValidationError("dataset row " + std::to_string(row) +
                              ", column 'ratl_pct': must be in [0, 100]");
}

ChoiceProblemRecord parse_rates_row(const std::vector<std::string>& cells, const Header& header,
                                    std::size_t row, const std::string& unit) {
    ChoiceProblemRecord rec;
    rec.label = trimmed(cells[header.index_of("label")]);
    rec.g_ens_i = field(cells, header, "g_ens_i", row);
    rec.g_ens_ii = field(cells, header, "g_ens_ii", row);
    rec.g_time = field(cells, header, "g_time", row);
    rec.ratl_fraction = field(cells, header, "ratl_pct", row);
    check_percentage(rec.ratl_fraction, row);
    rec.unit_label = unit;
    if (header.has("exp_t"))
        rec.exp_t = field(cells, header, "exp_t", row);
    if (header.has("dx"))
        rec.dx = field(cells, header, "dx", row);
    if (rec.exp_t && !(*rec.exp_t > 0))
        throw ValidationError("dataset row " + std::to_string(row) +
                              ", column 'exp_t': must be > 0");
    if (rec.dx && !(*rec.dx > 0))
        throw ValidationError("dataset row " + std::to_string(row) + ", column 'dx': must be > 0");
    const double g_time_ref = (rec.exp_t && rec.dx) ? *rec.dx / *rec.exp_t : rec.g_time;
    rec.gap = rec.g_ens_ii - g_time_ref;
    return rec;
}

BinaryTimeLottery parse_lottery(const std::vector<std::string>& cells, const Header& header,
                                std::size_t row, const std::string& suffix,
                                const std::string& unit) {
    const double t1 = field(cells, header, "t1_" + suffix, row);
    const double t2 = field(cells, header, "t2_" + suffix, row);
    const double p = field(cells, header, "p_" + suffix, row);
    const double dx = field(cells, header, "dx_" + suffix, row);
    try {
        return BinaryTimeLottery(t1, t2, p, dx, unit);
    } catch (const ValidationError& err) {
        throw ValidationError("dataset row " + std::to_string(row) + ", option " + suffix + ": " +
                              err.what());
    }
}

ChoiceProblemRecord parse_lotteries_row(const std::vector<std::string>& cells,
                                        const Header& header, std::size_t row,
                                        const std::string& unit) {
    ChoiceProblemRecord rec;
    rec.label = trimmed(cells[header.index_of("label")]);
    const auto option_i = parse_lottery(cells, header, row, "i", unit);
    const auto option_ii = parse_lottery(cells, header, row, "ii", unit);
    rec.g_ens_i = ensemble_growth(option_i);
    rec.g_ens_ii = ensemble_growth(option_ii);
    rec.g_time = time_growth(option_ii);
    rec.ratl_fraction = field(cells, header, "ratl_pct", row);
    check_percentage(rec.ratl_fraction, row);
    rec.unit_label = unit;
    rec.exp_t = option_ii.expected_time();
    rec.dx = option_ii.amount;
    rec.gap = rec.g_ens_ii - rec.g_time;
    return rec;
}

std::string format_double(double v) {
    return scalar_traits<double>::to_string(v);
}

// Fixed-precision formatting for SVG coordinates; keeps output bytes stable.
std::string fixed(double v, int precision = 3) {
    char buf[64];
    const int len = std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return std::string(buf, static_cast<std::size_t>(len));
}

} // namespace

std::vector<ChoiceProblemRecord> load_dataset(std::istream& source, DatasetSchema schema) {
    std::string line;
    std::string unit = "unit/time";
    std::size_t row = 0;
    bool header_seen = false;
    Header header;
    std::vector<ChoiceProblemRecord> records;

    while (std::getline(source, line)) {
        ++row;
        const std::string stripped = trimmed(line);
        if (stripped.empty())
            continue;
        if (stripped.front() == '#') {
            const std::string directive = "# unit:";
            if (stripped.rfind(directive, 0) == 0)
                unit = trimmed(stripped.substr(directive.size()));
            continue;
        }
        if (!header_seen) {
            for (const auto& col : split_csv_line(stripped))
                header.columns.push_back(trimmed(col));
            header_seen = true;
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != header.columns.size())
            throw ValidationError("dataset row " + std::to_string(row) + ": expected " +
                                  std::to_string(header.columns.size()) + " fields, got " +
                                  std::to_string(cells.size()));
        if (schema == DatasetSchema::rates)
            records.push_back(parse_rates_row(cells, header, row, unit));
        else
            records.push_back(parse_lotteries_row(cells, header, row, unit));
    }
    if (!header_seen)
        throw ValidationError("dataset: missing header line");
    return records;
}

std::vector<ChoiceProblemRecord> load_dataset(const std::string& csv_text, DatasetSchema schema) {
    std::istringstream stream(csv_text);
    return load_dataset(stream, schema);
}

std::string emit_rates_csv(const std::vector<ChoiceProblemRecord>& records) {
    std::ostringstream out;
    const bool raw = !records.empty() && records.front().exp_t && records.front().dx;
    if (!records.empty())
        out << "# unit: " << records.front().unit_label << "\n";
    out << "label,g_ens_i,g_ens_ii,g_time,ratl_pct";
    if (raw)
        out << ",exp_t,dx";
    out << "\n";
    for (const auto& rec : records) {
        out << rec.label << ',' << format_double(rec.g_ens_i) << ',' << format_double(rec.g_ens_ii)
            << ',' << format_double(rec.g_time) << ',' << format_double(rec.ratl_fraction);
        if (raw)
            out << ',' << format_double(rec.exp_t.value()) << ',' << format_double(rec.dx.value());
        out << "\n";
    }
    return out.str();
}

std::vector<AuditFinding> audit(const std::vector<ChoiceProblemRecord>& records) {
    std::vector<AuditFinding> findings;
    auto check = [&](const std::string& label, const std::string& field_name, double stated,
                     double recomputed) {
        const double diff = std::abs(stated - recomputed);
        if (diff <= kPrintHalfUlp)
            return;
        findings.push_back({label, field_name, stated, recomputed,
                            diff <= kRoundingTol ? AuditSeverity::rounding
                                                 : AuditSeverity::inconsistent});
    };

    for (const auto& rec : records) {
        double g_time_ref = rec.g_time;
        if (rec.exp_t && rec.dx) {
            g_time_ref = *rec.dx / *rec.exp_t;
            check(rec.label, "g_time", rec.g_time, g_time_ref);
        }
        check(rec.label, "gap", rec.gap, rec.g_ens_ii - g_time_ref);
    }
    return findings;
}

OLSFit ols_fit(const std::vector<ChoiceProblemRecord>& records) {
    if (records.size() < 3)
        throw ValidationError("ols_fit: needs at least 3 records");
    for (const auto& rec : records)
        if (rec.unit_label != records.front().unit_label)
            throw ValidationError("ols_fit: records mix unit labels ('" +
                                  records.front().unit_label + "' vs '" + rec.unit_label +
                                  "'); growth-rate magnitudes are not comparable across units");
    const auto n = records.size();
    double x_mean = 0, y_mean = 0;
    for (const auto& rec : records) {
        x_mean += rec.gap;
        y_mean += rec.ratl_fraction;
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double s_xx = 0, s_xy = 0, s_yy = 0;
    for (const auto& rec : records) {
        const double dx = rec.gap - x_mean;
        const double dy = rec.ratl_fraction - y_mean;
        s_xx += dx * dx;
        s_xy += dx * dy;
        s_yy += dy * dy;
    }
    if (s_xx <= 0)
        throw DegenerateRegressionError("ols_fit: gap column has zero variance");

    OLSFit fit;
    fit.n = n;
    fit.x_mean = x_mean;
    fit.s_xx = s_xx;
    fit.slope = s_xy / s_xx;
    fit.intercept = y_mean - fit.slope * x_mean;

    double sse = 0;
    for (const auto& rec : records) {
        const double resid = rec.ratl_fraction - (fit.intercept + fit.slope * rec.gap);
        sse += resid * resid;
    }
    fit.r_squared = s_yy > 0 ? 1.0 - sse / s_yy : 1.0;
    fit.residual_std = std::sqrt(sse / static_cast<double>(n - 2));
    return fit;
}

std::vector<BandPoint> confidence_band(const OLSFit& fit, const std::vector<double>& xs) {
    std::vector<BandPoint> band;
    band.reserve(xs.size());
    for (const double x : xs) {
        const double d = x - fit.x_mean;
        // 1 sigma multiplier taken literally; swap for a t-quantile if a
        // different coverage is ever needed.
        const double half = fit.residual_std *
                            std::sqrt(1.0 / static_cast<double>(fit.n) + d * d / fit.s_xx);
        band.push_back({x, fit.intercept + fit.slope * x, half});
    }
    return band;
}

namespace {

struct Viewport {
    // data ranges
    double x_lo, x_hi, y_lo, y_hi;
    // pixel geometry
    static constexpr double width = 640, height = 440;
    static constexpr double left = 70, right = 610, top = 30, bottom = 390;

    double px(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * (right - left); }
    double py(double y) const { return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top); }
};

void write_svg(const std::vector<ChoiceProblemRecord>& records, const OLSFit& fit,
               const std::vector<BandPoint>& band, std::ostream& out) {
    auto lo_hi = [](double lo, double hi) {
        const double pad = 0.08 * (hi - lo == 0 ? std::max(std::abs(hi), 1.0) : hi - lo);
        return std::pair{lo - pad, hi + pad};
    };
    double x_min = records.front().gap, x_max = x_min;
    for (const auto& rec : records) {
        x_min = std::min(x_min, rec.gap);
        x_max = std::max(x_max, rec.gap);
    }
    for (const auto& bp : band) {
        x_min = std::min(x_min, bp.x);
        x_max = std::max(x_max, bp.x);
    }
    const auto [x_lo, x_hi] = lo_hi(x_min, x_max);
    const auto [y_lo, y_hi] = lo_hi(0.0, 100.0);
    const Viewport vp{x_lo, x_hi, y_lo, y_hi};

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(vp.width, 0)
        << "\" height=\"" << fixed(vp.height, 0) << "\" viewBox=\"0 0 " << fixed(vp.width, 0) << ' '
        << fixed(vp.height, 0) << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << fixed(vp.width, 0) << "\" height=\""
        << fixed(vp.height, 0) << "\" fill=\"white\"/>\n";

    // shaded 68% band: upper edge forward, lower edge back
    if (!band.empty()) {
        out << "  <polygon fill=\"#c8c8c8\" fill-opacity=\"0.55\" stroke=\"none\" points=\"";
        for (const auto& bp : band)
            out << fixed(vp.px(bp.x)) << ',' << fixed(vp.py(bp.y_fit + bp.half_width)) << ' ';
        for (auto it = band.rbegin(); it != band.rend(); ++it)
            out << fixed(vp.px(it->x)) << ',' << fixed(vp.py(it->y_fit - it->half_width)) << ' ';
        out << "\"/>\n";
        out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (const auto& bp : band)
            out << fixed(vp.px(bp.x)) << ',' << fixed(vp.py(bp.y_fit)) << ' ';
        out << "\"/>\n";
    }

    // axes
    out << "  <line x1=\"" << fixed(vp.left) << "\" y1=\"" << fixed(vp.bottom) << "\" x2=\""
        << fixed(vp.right) << "\" y2=\"" << fixed(vp.bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << fixed(vp.left) << "\" y1=\"" << fixed(vp.top) << "\" x2=\""
        << fixed(vp.left) << "\" y2=\"" << fixed(vp.bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << fixed((vp.left + vp.right) / 2) << "\" y=\"" << fixed(vp.bottom + 35)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
        << "ensemble-average minus time-average growth rate";
    if (!records.front().unit_label.empty())
        out << " (" << records.front().unit_label << ")";
    out << "</text>\n";
    out << "  <text x=\"18\" y=\"" << fixed((vp.top + vp.bottom) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 "
        << fixed((vp.top + vp.bottom) / 2) << ")\">fraction of RATL subjects (%)</text>\n";

    // scatter: one mark per record
    for (const auto& rec : records)
        out << "  <circle class=\"datum\" cx=\"" << fixed(vp.px(rec.gap)) << "\" cy=\""
            << fixed(vp.py(rec.ratl_fraction)) << "\" r=\"4\" fill=\"#1f4e8c\"/>\n";

    // fit label
    char r2[32];
    std::snprintf(r2, sizeof(r2), "%.2f", fit.r_squared);
    out << "  <text x=\"" << fixed(vp.right - 8) << "\" y=\"" << fixed(vp.top + 16)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"end\">R\xC2\xB2 = " << r2
        << "</text>\n";
    out << "</svg>\n";
}

void write_csv(const std::vector<ChoiceProblemRecord>& records, const OLSFit& fit,
               const std::vector<BandPoint>& band, std::ostream& out) {
    out << "series,label,x,y,y_fit,band_lo,band_hi\n";
    for (const auto& rec : records) {
        const double y_fit = fit.intercept + fit.slope * rec.gap;
        out << "point," << rec.label << ',' << format_double(rec.gap) << ','
            << format_double(rec.ratl_fraction) << ',' << format_double(y_fit) << ",,\n";
    }
    for (const auto& bp : band) {
        out << "band,," << format_double(bp.x) << ',' << ',' << format_double(bp.y_fit) << ','
            << format_double(bp.y_fit - bp.half_width) << ','
            << format_double(bp.y_fit + bp.half_width) << "\n";
    }
}

} // namespace

void emit_figure(const std::vector<ChoiceProblemRecord>& records, const OLSFit& fit,
                 const std::vector<BandPoint>& band, std::ostream& sink, FigureFormat format) {
    if (records.empty())
        throw ValidationError("emit_figure: record list must be nonempty");
    if (format == FigureFormat::svg)
        write_svg(records, fit, band, sink);
    else
        write_csv(records, fit, band, sink);
    if (!sink)
        throw ValidationError("emit_figure: sink write failure");
}

} // namespace timelot
