#include "timelot/cli.hpp"

#include "timelot/axioms.hpp"
#include "timelot/datasets.hpp"
#include "timelot/design.hpp"
#include "timelot/empirics.hpp"
#include "timelot/lottery.hpp"
#include "timelot/preference.hpp"
#include "timelot/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace timelot::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const GrowthSummary& s) {
    return {{"time_avg", s.time_avg}, {"ensemble_avg", s.ensemble_avg},
            {"jensen_gap", s.jensen_gap}};
}

ordered_json to_json(const GeneralLottery& lot) {
    ordered_json outcomes = ordered_json::array();
    for (const auto& o : lot.outcomes())
        outcomes.push_back({{"amount", o.amount}, {"time", o.time}, {"prob", o.prob}});
    return {{"unit", lot.unit()}, {"outcomes", outcomes}};
}

ordered_json to_json(const PreferenceOutcome& p) {
    return {{"relation", to_string(p.relation)}, {"g_first", p.g_first},
            {"g_second", p.g_second}};
}

ordered_json to_json(const BinaryTimeLottery& tl) {
    return {{"t1", tl.t1}, {"t2", tl.t2}, {"p", tl.p}, {"amount", tl.amount},
            {"unit", tl.unit}};
}

ordered_json to_json(const TimedPayment& tp) {
    return {{"amount", tp.amount}, {"time", tp.time}, {"unit", tp.unit}};
}

ordered_json to_json(const DesignedPair& pair) {
    return {{"risky", to_json(pair.risky)},
            {"riskless", to_json(pair.riskless)},
            {"prediction_time", to_json(pair.prediction_time)},
            {"prediction_ensemble", to_json(pair.prediction_ensemble)},
            {"disagree", pair.disagree}};
}

ordered_json to_json(const SimResult& r) {
    return {{"empirical_rate", r.empirical_rate},
            {"analytic_target", r.analytic_target},
            {"abs_error", r.abs_error},
            {"rel_error", r.rel_error},
            {"tallies", r.tallies}};
}

ordered_json to_json(const AuditFinding& f) {
    return {{"label", f.label},
            {"field", f.field},
            {"stated", f.stated},
            {"recomputed", f.recomputed},
            {"severity", to_string(f.severity)}};
}

ordered_json to_json(const AxiomCounts& c) {
    return {{"checked", c.checked}, {"passed", c.passed}, {"failed", c.failed()}};
}

// Violation reports are emitted with the two mixture rates g_mix_ab (theta*a +
// (1-theta)*c) and g_mix_cb (theta*b + (1-theta)*c); rational values are
// rendered as doubles for display.
template <class S>
ordered_json to_json_report(const IndependenceReportT<S>& report) {
    auto dbl = [](const S& v) { return scalar_traits<S>::to_double(v); };
    ordered_json triple = ordered_json::array();
    for (const auto& lottery : report.triple) {
        ordered_json outcomes = ordered_json::array();
        for (const auto& o : lottery.outcomes())
            outcomes.push_back({{"amount", dbl(o.amount)}, {"time", dbl(o.time)},
                                {"prob", dbl(o.prob)}});
        triple.push_back({{"unit", lottery.unit()}, {"outcomes", outcomes}});
    }
    return {{"holds", report.holds},
            {"theta", dbl(report.theta)},
            {"g_mix_ab", dbl(report.g_mix_a)},
            {"g_mix_cb", dbl(report.g_mix_b)},
            {"triple", triple}};
}

ordered_json to_json(const AxiomReport& r) {
    return {{"approach", to_string(r.approach)},
            {"mode", r.mode == NumericMode::float64 ? "float64" : "exact-rational"},
            {"equal_payments", r.equal_payments},
            {"completeness", to_json(r.completeness)},
            {"transitivity", to_json(r.transitivity)},
            {"continuity", to_json(r.continuity)},
            {"independence", to_json(r.independence)},
            {"all_passed", r.all_passed()}};
}

struct LotteryFlags {
    double t1 = 0, t2 = 0, p = -1, dx = 0;
    std::string unit = kDefaultUnit;
    std::string json_path;

    void add_to(CLI::App* cmd, bool with_json = true) {
        cmd->add_option("--t1", t1, "earlier payment time");
        cmd->add_option("--t2", t2, "later payment time");
        cmd->add_option("--p", p, "probability of the earlier payment");
        cmd->add_option("--dx", dx, "payment amount");
        cmd->add_option("--unit", unit, "rate unit label");
        if (with_json)
            cmd->add_option("--json", json_path, "general lottery JSON file");
    }

    bool binary_given() const { return p >= 0; }

    BinaryTimeLottery binary() const { return BinaryTimeLottery(t1, t2, p, dx, unit); }

    GeneralLottery general() const {
        if (!json_path.empty())
            return load_lottery_json(json_path);
        if (!binary_given())
            throw ValidationError("provide --t1/--t2/--p/--dx or --json <file>");
        return to_general(binary());
    }

    static GeneralLottery load_lottery_json(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw ValidationError("cannot open lottery file: " + path);
        ordered_json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& err) {
            throw ValidationError("lottery file " + path + ": " + err.what());
        }
        std::vector<Outcome> outcomes;
        if (!doc.contains("outcomes") || !doc["outcomes"].is_array())
            throw ValidationError("lottery file " + path + ": missing 'outcomes' array");
        for (const auto& o : doc["outcomes"])
            outcomes.emplace_back(o.at("amount").get<double>(), o.at("time").get<double>(),
                                  o.at("prob").get<double>());
        const std::string unit = doc.value("unit", kDefaultUnit);
        return GeneralLottery(std::move(outcomes), unit);
    }
};

Approach parse_approach(const std::string& name) {
    if (name == "time")
        return Approach::time;
    if (name == "ensemble")
        return Approach::ensemble;
    throw ValidationError("unknown approach '" + name + "' (expected time or ensemble)");
}

std::vector<ChoiceProblemRecord> resolve_dataset(const std::string& name,
                                                 const std::string& schema) {
    if (name == "dejarnette")
        return shipped_dataset(Dataset::dejarnette);
    if (name == "onay")
        return shipped_dataset(Dataset::onay);
    std::ifstream in(name);
    if (!in)
        throw ValidationError("unknown dataset '" + name +
                              "' (expected dejarnette, onay, or a CSV path)");
    return load_dataset(in, schema == "lotteries" ? DatasetSchema::lotteries
                                                  : DatasetSchema::rates);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TIMELOT_SEED")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env)
            return parsed;
    }
    return 0;
}

std::string one_decimal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

void print_table(const std::vector<ChoiceProblemRecord>& records, const std::string& name,
                 std::ostream& out) {
    const bool raw = !records.empty() && records.front().exp_t && records.front().dx;
    out << "dataset: " << name << " (" << records.front().unit_label << ")\n";
    char line[256];
    if (raw) {
        std::snprintf(line, sizeof(line), "%-10s %8s %8s %9s %8s %8s %9s\n", "label", "exp_t",
                      "dx", "g_ens_ii", "g_time", "gap", "ratl_pct");
        out << line;
        for (const auto& r : records) {
            std::snprintf(line, sizeof(line), "%-10s %8s %8s %9s %8s %8s %9s\n", r.label.c_str(),
                          one_decimal(*r.exp_t).c_str(), one_decimal(*r.dx).c_str(),
                          one_decimal(r.g_ens_ii).c_str(), one_decimal(r.g_time).c_str(),
                          one_decimal(r.gap).c_str(), one_decimal(r.ratl_fraction).c_str());
            out << line;
        }
    } else {
        std::snprintf(line, sizeof(line), "%-10s %8s %9s %8s %8s %9s\n", "label", "g_ens_i",
                      "g_ens_ii", "g_time", "gap", "ratl_pct");
        out << line;
        for (const auto& r : records) {
            std::snprintf(line, sizeof(line), "%-10s %8s %9s %8s %8s %9s\n", r.label.c_str(),
                          one_decimal(r.g_ens_i).c_str(), one_decimal(r.g_ens_ii).c_str(),
                          one_decimal(r.g_time).c_str(), one_decimal(r.gap).c_str(),
                          one_decimal(r.ratl_fraction).c_str());
            out << line;
        }
    }
}

std::vector<double> band_grid(const std::vector<ChoiceProblemRecord>& records, int points = 101) {
    double lo = records.front().gap, hi = lo;
    for (const auto& r : records) {
        lo = std::min(lo, r.gap);
        hi = std::max(hi, r.gap);
    }
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        xs.push_back(lo + (hi - lo) * i / (points - 1));
    return xs;
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.emplace(path, std::ios::binary);
            if (!*file_)
                throw ValidationError("cannot open output file: " + path);
        }
    }

    std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : fallback_; }

    void finish() {
        if (file_) {
            file_->flush();
            if (!*file_)
                throw ValidationError("output write failure");
        }
    }

private:
    std::optional<std::ofstream> file_;
    std::ostream& fallback_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"growth-rate evaluation of time lotteries", "timelot"};
    app.set_version_flag("--version", "timelot 0.1.0");
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "growth summary of a lottery");
    LotteryFlags eval_flags;
    eval_flags.add_to(eval_cmd);
    std::string eval_out;
    eval_cmd->add_option("--out", eval_out, "write output to a file");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "risk class against the degenerate lottery");
    LotteryFlags classify_flags;
    classify_flags.add_to(classify_cmd, /*with_json=*/false);
    std::string classify_approach;
    classify_cmd->add_option("--approach", classify_approach, "time or ensemble (default: both)");

    // mix
    auto* mix_cmd = app.add_subcommand("mix", "combine two lotteries with weight theta");
    std::string mix_a, mix_b;
    double mix_theta = -1;
    mix_cmd->add_option("--a", mix_a, "first lottery JSON file");
    mix_cmd->add_option("--b", mix_b, "second lottery JSON file");
    LotteryFlags mix_a_flags, mix_b_flags;
    mix_cmd->add_option("--a-t1", mix_a_flags.t1);
    mix_cmd->add_option("--a-t2", mix_a_flags.t2);
    mix_cmd->add_option("--a-p", mix_a_flags.p);
    mix_cmd->add_option("--a-dx", mix_a_flags.dx);
    mix_cmd->add_option("--b-t1", mix_b_flags.t1);
    mix_cmd->add_option("--b-t2", mix_b_flags.t2);
    mix_cmd->add_option("--b-p", mix_b_flags.p);
    mix_cmd->add_option("--b-dx", mix_b_flags.dx);
    mix_cmd->add_option("--unit", mix_a_flags.unit, "rate unit label for flag-given lotteries");
    mix_cmd->add_option("--theta", mix_theta, "weight of the first lottery")->required();
    std::string mix_out;
    mix_cmd->add_option("--out", mix_out, "write output to a file");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo growth-rate estimation");
    LotteryFlags sim_flags;
    sim_flags.add_to(sim_cmd);
    std::string sim_mode;
    std::uint64_t sim_n = 1000000;
    std::uint64_t sim_seed = default_seed();
    std::vector<std::uint64_t> sim_checkpoints;
    sim_cmd->add_option("--mode", sim_mode, "sequential or ensemble")->required();
    sim_cmd->add_option("--n", sim_n, "rounds or copies");
    sim_cmd->add_option("--seed", sim_seed, "RNG seed (default: $TIMELOT_SEED or 0)");
    sim_cmd->add_option("--checkpoints", sim_checkpoints, "running estimates at these counts (CSV output)")
        ->delimiter(',');
    std::string sim_out;
    sim_cmd->add_option("--out", sim_out, "write output to a file");

    // axioms
    auto* ax_cmd = app.add_subcommand("axioms", "check the vNM axioms on random lotteries");
    std::string ax_approach;
    std::uint64_t ax_samples = 10000;
    std::uint64_t ax_seed = default_seed();
    bool ax_exact = true;
    bool ax_unequal = false;
    ax_cmd->add_option("--approach", ax_approach, "time or ensemble")->required();
    ax_cmd->add_option("--samples", ax_samples, "sampled instances per axiom");
    ax_cmd->add_option("--seed", ax_seed, "RNG seed (default: $TIMELOT_SEED or 0)");
    ax_cmd->add_flag("--exact,!--no-exact", ax_exact, "exact-rational backend (default on)");
    ax_cmd->add_flag("--unequal-payments", ax_unequal,
                     "sample unequal payments in the time-approach independence check "
                     "(demonstrates the violation)");
    std::string ax_out;
    ax_cmd->add_option("--out", ax_out, "write output to a file");

    // reproduce
    auto* rep_cmd = app.add_subcommand("reproduce", "regenerate the shipped tables and figure");
    std::string rep_what, rep_dataset, rep_format = "svg", rep_out;
    rep_cmd->add_option("what", rep_what, "tables or figure")
        ->required()
        ->check(CLI::IsMember({"tables", "figure"}));
    rep_cmd->add_option("--dataset", rep_dataset, "dejarnette or onay")->required();
    rep_cmd->add_option("--format", rep_format, "figure format: svg or csv")
        ->check(CLI::IsMember({"svg", "csv"}));
    rep_cmd->add_option("--out", rep_out, "write output to a file");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "cross-check a dataset's stated columns");
    std::string audit_dataset, audit_schema = "rates", audit_out;
    audit_cmd->add_option("--dataset", audit_dataset, "dejarnette, onay, or a CSV path")
        ->required();
    audit_cmd->add_option("--schema", audit_schema, "schema for CSV paths: rates or lotteries")
        ->check(CLI::IsMember({"rates", "lotteries"}));
    audit_cmd->add_option("--out", audit_out, "write output to a file");

    // design
    auto* design_cmd = app.add_subcommand("design", "distinguishing choice problems");
    std::string design_setup, design_out;
    LotteryFlags design_flags;
    double design_placement = 0.5, design_ratio = 0;
    design_cmd->add_option("setup", design_setup, "times or amounts")
        ->required()
        ->check(CLI::IsMember({"times", "amounts"}));
    design_flags.add_to(design_cmd, /*with_json=*/false);
    design_cmd->add_option("--placement", design_placement,
                           "position inside the disagreement interval (times setup)");
    design_cmd->add_option("--ratio", design_ratio, "sure-payment amount ratio (amounts setup)");
    design_cmd->add_option("--out", design_out, "write output to a file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& parse_err) {
        err << "usage error: " << parse_err.what() << "\n";
        return 1;
    }

    try {
        if (eval_cmd->parsed()) {
            OutputTarget target(eval_out, out);
            const auto lottery = eval_flags.general();
            auto doc = to_json(growth_summary(lottery));
            doc["unit"] = lottery.unit();
            target.stream() << doc.dump(2) << "\n";
            target.finish();
            return 0;
        }

        if (classify_cmd->parsed()) {
            const auto tl = classify_flags.binary();
            if (!classify_approach.empty()) {
                out << to_string(classify_pair(tl, parse_approach(classify_approach))) << "\n";
            } else {
                out << "time: " << to_string(classify_pair(tl, Approach::time)) << "\n";
                out << "ensemble: " << to_string(classify_pair(tl, Approach::ensemble)) << "\n";
            }
            return 0;
        }

        if (mix_cmd->parsed()) {
            OutputTarget target(mix_out, out);
            mix_b_flags.unit = mix_a_flags.unit;
            auto side = [](const std::string& path, const LotteryFlags& flags,
                           const std::string& which) {
                if (!path.empty())
                    return LotteryFlags::load_lottery_json(path);
                if (!flags.binary_given())
                    throw ValidationError("mix: provide --" + which + " <json file> or the --" +
                                          which + "-t1/-t2/-p/-dx flags");
                return to_general(flags.binary());
            };
            const GeneralLottery a = side(mix_a, mix_a_flags, "a");
            const GeneralLottery b = side(mix_b, mix_b_flags, "b");
            if (mix_theta < 0 || mix_theta > 1)
                throw ValidationError("mix: --theta must be in [0, 1]");
            const auto combined = mix(a, b, mix_theta);
            auto doc = to_json(combined);
            const auto summary = growth_summary(combined);
            doc["time_avg"] = summary.time_avg;
            doc["ensemble_avg"] = summary.ensemble_avg;
            doc["jensen_gap"] = summary.jensen_gap;
            target.stream() << doc.dump(2) << "\n";
            target.finish();
            return 0;
        }

        if (sim_cmd->parsed()) {
            OutputTarget target(sim_out, out);
            const auto lottery = sim_flags.general();
            const SimMode mode = [&] {
                if (sim_mode == "sequential")
                    return SimMode::sequential;
                if (sim_mode == "ensemble")
                    return SimMode::ensemble;
                throw ValidationError("unknown mode '" + sim_mode +
                                      "' (expected sequential or ensemble)");
            }();
            if (!sim_checkpoints.empty()) {
                target.stream() << "count,empirical_rate\n";
                for (const auto& [count, rate] : convergence_series(lottery, mode,
                                                                    sim_checkpoints, sim_seed))
                    target.stream() << count << ',' << scalar_traits<double>::to_string(rate)
                                    << "\n";
            } else {
                const SimConfig config{sim_seed, sim_n, mode};
                const SimResult result = mode == SimMode::sequential
                                             ? simulate_sequential(lottery, config)
                                             : simulate_ensemble(lottery, config);
                target.stream() << to_json(result).dump(2) << "\n";
            }
            target.finish();
            return 0;
        }

        if (ax_cmd->parsed()) {
            OutputTarget target(ax_out, out);
            const Approach approach = parse_approach(ax_approach);
            const bool equal_payments = !ax_unequal;
            const AxiomReport report =
                ax_exact ? axiom_suite<Rational>(ax_samples, ax_seed, approach, equal_payments)
                         : axiom_suite<double>(ax_samples, ax_seed, approach, equal_payments);
            auto doc = to_json(report);
            if (report.independence.failed() > 0) {
                // attach a few concrete violating triples
                constexpr std::uint64_t kSearchBudget = 2000;
                constexpr std::size_t kMaxShown = 3;
                ordered_json examples = ordered_json::array();
                if (ax_exact) {
                    SearchConfigQ config;
                    config.equal_payments = equal_payments;
                    for (const auto& v : independence_counterexample_search<Rational>(
                             config, kSearchBudget, ax_seed, approach)) {
                        examples.push_back(to_json_report(v));
                        if (examples.size() >= kMaxShown)
                            break;
                    }
                } else {
                    SearchConfig config;
                    config.equal_payments = equal_payments;
                    for (const auto& v : independence_counterexample_search<double>(
                             config, kSearchBudget, ax_seed, approach)) {
                        examples.push_back(to_json_report(v));
                        if (examples.size() >= kMaxShown)
                            break;
                    }
                }
                doc["independence_violations"] = examples;
            }
            target.stream() << doc.dump(2) << "\n";
            target.finish();
            return report.all_passed() ? 0 : 2;
        }

        if (rep_cmd->parsed()) {
            OutputTarget target(rep_out, out);
            const auto records = resolve_dataset(rep_dataset, "rates");
            if (rep_what == "tables") {
                print_table(records, rep_dataset, target.stream());
            } else {
                const auto fit = ols_fit(records);
                const auto band = confidence_band(fit, band_grid(records));
                emit_figure(records, fit, band, target.stream(),
                            rep_format == "svg" ? FigureFormat::svg : FigureFormat::csv);
            }
            target.finish();
            return 0;
        }

        if (audit_cmd->parsed()) {
            OutputTarget target(audit_out, out);
            const auto findings = audit(resolve_dataset(audit_dataset, audit_schema));
            ordered_json doc = ordered_json::array();
            bool inconsistent = false;
            for (const auto& finding : findings) {
                doc.push_back(to_json(finding));
                inconsistent |= finding.severity == AuditSeverity::inconsistent;
            }
            target.stream() << doc.dump(2) << "\n";
            target.finish();
            return inconsistent ? 2 : 0;
        }

        if (design_cmd->parsed()) {
            OutputTarget target(design_out, out);
            const auto tl = design_flags.binary();
            DesignedPair pair = [&] {
                if (design_setup == "times")
                    return design_adjust_times(tl, design_placement);
                if (design_ratio <= 0)
                    throw ValidationError("design amounts: --ratio is required and must be > 0");
                return design_adjust_amounts(tl, design_ratio);
            }();
            target.stream() << to_json(pair).dump(2) << "\n";
            target.finish();
            return 0;
        }
    } catch (const ValidationError& verr) {
        err << "error: " << verr.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& jerr) {
        err << "error: " << jerr.what() << "\n";
        return 1;
    }

    err << "usage error: no subcommand given\n";
    return 1;
}

} // namespace timelot::cli
