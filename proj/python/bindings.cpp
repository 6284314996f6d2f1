#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "timelot/axioms.hpp"
#include "timelot/datasets.hpp"
#include "timelot/design.hpp"
#include "timelot/empirics.hpp"
#include "timelot/lottery.hpp"
#include "timelot/preference.hpp"
#include "timelot/simulate.hpp"

#include <sstream>

namespace py = pybind11;
using namespace timelot;

namespace {

std::string render_figure(const std::vector<ChoiceProblemRecord>& records, const OLSFit& fit,
                          const std::vector<BandPoint>& band, const std::string& format) {
    std::ostringstream out;
    emit_figure(records, fit, band, out,
                format == "csv" ? FigureFormat::csv : FigureFormat::svg);
    return out.str();
}

AxiomReport run_axiom_suite(std::uint64_t samples, std::uint64_t seed, Approach approach,
                            bool equal_payments, bool exact) {
    return exact ? axiom_suite<Rational>(samples, seed, approach, equal_payments)
                 : axiom_suite<double>(samples, seed, approach, equal_payments);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "growth-rate evaluation of time lotteries";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::enum_<Approach>(m, "Approach")
        .value("time", Approach::time)
        .value("ensemble", Approach::ensemble);

    py::enum_<Relation>(m, "Relation")
        .value("prefers_first", Relation::prefers_first)
        .value("indifferent", Relation::indifferent)
        .value("prefers_second", Relation::prefers_second);

    py::enum_<RiskClass>(m, "RiskClass")
        .value("RATL", RiskClass::RATL)
        .value("RNTL", RiskClass::RNTL)
        .value("RSTL", RiskClass::RSTL);

    py::enum_<SimMode>(m, "SimMode")
        .value("sequential", SimMode::sequential)
        .value("ensemble", SimMode::ensemble);

    py::enum_<AuditSeverity>(m, "AuditSeverity")
        .value("rounding", AuditSeverity::rounding)
        .value("inconsistent", AuditSeverity::inconsistent);

    py::enum_<Dataset>(m, "Dataset")
        .value("dejarnette", Dataset::dejarnette)
        .value("onay", Dataset::onay);

    py::class_<TimedPayment>(m, "TimedPayment")
        .def(py::init<double, double, std::string>(), py::arg("amount"), py::arg("time"),
             py::arg("unit") = kDefaultUnit)
        .def_readonly("amount", &TimedPayment::amount)
        .def_readonly("time", &TimedPayment::time)
        .def_readonly("unit", &TimedPayment::unit)
        .def("__repr__", [](const TimedPayment& tp) {
            return "TimedPayment(amount=" + std::to_string(tp.amount) +
                   ", time=" + std::to_string(tp.time) + ")";
        });

    py::class_<BinaryTimeLottery>(m, "BinaryTimeLottery")
        .def(py::init<double, double, double, double, std::string>(), py::arg("t1"),
             py::arg("t2"), py::arg("p"), py::arg("amount"), py::arg("unit") = kDefaultUnit)
        .def_readonly("t1", &BinaryTimeLottery::t1)
        .def_readonly("t2", &BinaryTimeLottery::t2)
        .def_readonly("p", &BinaryTimeLottery::p)
        .def_readonly("amount", &BinaryTimeLottery::amount)
        .def_readonly("unit", &BinaryTimeLottery::unit)
        .def("expected_time", &BinaryTimeLottery::expected_time)
        .def("degenerate", &BinaryTimeLottery::degenerate)
        .def("__repr__", [](const BinaryTimeLottery& tl) {
            return "BinaryTimeLottery(t1=" + std::to_string(tl.t1) +
                   ", t2=" + std::to_string(tl.t2) + ", p=" + std::to_string(tl.p) +
                   ", amount=" + std::to_string(tl.amount) + ")";
        });

    py::class_<Outcome>(m, "Outcome")
        .def(py::init<double, double, double>(), py::arg("amount"), py::arg("time"),
             py::arg("prob"))
        .def_readonly("amount", &Outcome::amount)
        .def_readonly("time", &Outcome::time)
        .def_readonly("prob", &Outcome::prob);

    py::class_<GeneralLottery>(m, "GeneralLottery")
        .def(py::init<std::vector<Outcome>, std::string>(), py::arg("outcomes"),
             py::arg("unit") = kDefaultUnit)
        .def_static("single", &GeneralLottery::single, py::arg("amount"), py::arg("time"),
                    py::arg("unit") = kDefaultUnit)
        .def_property_readonly("outcomes", &GeneralLottery::outcomes)
        .def_property_readonly("unit", &GeneralLottery::unit)
        .def("expected_amount", &GeneralLottery::expected_amount)
        .def("expected_time", &GeneralLottery::expected_time);

    py::class_<GrowthSummary>(m, "GrowthSummary")
        .def_readonly("time_avg", &GrowthSummary::time_avg)
        .def_readonly("ensemble_avg", &GrowthSummary::ensemble_avg)
        .def_readonly("jensen_gap", &GrowthSummary::jensen_gap)
        .def("__repr__", [](const GrowthSummary& s) {
            return "GrowthSummary(time_avg=" + std::to_string(s.time_avg) +
                   ", ensemble_avg=" + std::to_string(s.ensemble_avg) +
                   ", jensen_gap=" + std::to_string(s.jensen_gap) + ")";
        });

    py::class_<PreferenceOutcome>(m, "PreferenceOutcome")
        .def_readonly("relation", &PreferenceOutcome::relation)
        .def_readonly("g_first", &PreferenceOutcome::g_first)
        .def_readonly("g_second", &PreferenceOutcome::g_second);

    py::class_<IndependenceReport>(m, "IndependenceReport")
        .def_readonly("holds", &IndependenceReport::holds)
        .def_readonly("theta", &IndependenceReport::theta)
        .def_readonly("g_mix_a", &IndependenceReport::g_mix_a)
        .def_readonly("g_mix_b", &IndependenceReport::g_mix_b);

    py::class_<IndependenceCaseT<double>>(m, "IndependenceCase")
        .def(py::init<BinaryTimeLottery, BinaryTimeLottery, BinaryTimeLottery, double>(),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("theta"));

    py::class_<SamplerRanges>(m, "SamplerRanges")
        .def(py::init<>())
        .def_readwrite("t_min", &SamplerRanges::t_min)
        .def_readwrite("t_max", &SamplerRanges::t_max)
        .def_readwrite("dx_min", &SamplerRanges::dx_min)
        .def_readwrite("dx_max", &SamplerRanges::dx_max)
        .def_readwrite("p_min", &SamplerRanges::p_min)
        .def_readwrite("p_max", &SamplerRanges::p_max);

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("ranges", &SearchConfig::ranges)
        .def_readwrite("equal_payments", &SearchConfig::equal_payments)
        .def_readwrite("seeded", &SearchConfig::seeded);

    py::class_<AxiomCounts>(m, "AxiomCounts")
        .def_readonly("checked", &AxiomCounts::checked)
        .def_readonly("passed", &AxiomCounts::passed)
        .def_property_readonly("failed", &AxiomCounts::failed);

    py::class_<AxiomReport>(m, "AxiomReport")
        .def_readonly("approach", &AxiomReport::approach)
        .def_readonly("equal_payments", &AxiomReport::equal_payments)
        .def_readonly("completeness", &AxiomReport::completeness)
        .def_readonly("transitivity", &AxiomReport::transitivity)
        .def_readonly("continuity", &AxiomReport::continuity)
        .def_readonly("independence", &AxiomReport::independence)
        .def("all_passed", &AxiomReport::all_passed);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::uint64_t seed, std::uint64_t count, SimMode mode) {
                 return SimConfig{seed, count, mode};
             }),
             py::arg("seed"), py::arg("count"), py::arg("mode"))
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("count", &SimConfig::count)
        .def_readwrite("mode", &SimConfig::mode);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("empirical_rate", &SimResult::empirical_rate)
        .def_readonly("analytic_target", &SimResult::analytic_target)
        .def_readonly("abs_error", &SimResult::abs_error)
        .def_readonly("rel_error", &SimResult::rel_error)
        .def_readonly("tallies", &SimResult::tallies)
        .def("__eq__", [](const SimResult& a, const SimResult& b) { return a == b; });

    py::class_<ChoiceProblemRecord>(m, "ChoiceProblemRecord")
        .def_readonly("label", &ChoiceProblemRecord::label)
        .def_readonly("g_ens_i", &ChoiceProblemRecord::g_ens_i)
        .def_readonly("g_ens_ii", &ChoiceProblemRecord::g_ens_ii)
        .def_readonly("g_time", &ChoiceProblemRecord::g_time)
        .def_readonly("gap", &ChoiceProblemRecord::gap)
        .def_readonly("ratl_fraction", &ChoiceProblemRecord::ratl_fraction)
        .def_readonly("unit_label", &ChoiceProblemRecord::unit_label)
        .def_readonly("exp_t", &ChoiceProblemRecord::exp_t)
        .def_readonly("dx", &ChoiceProblemRecord::dx);

    py::class_<AuditFinding>(m, "AuditFinding")
        .def_readonly("label", &AuditFinding::label)
        .def_readonly("field", &AuditFinding::field)
        .def_readonly("stated", &AuditFinding::stated)
        .def_readonly("recomputed", &AuditFinding::recomputed)
        .def_readonly("severity", &AuditFinding::severity);

    py::class_<OLSFit>(m, "OLSFit")
        .def_readonly("slope", &OLSFit::slope)
        .def_readonly("intercept", &OLSFit::intercept)
        .def_readonly("r_squared", &OLSFit::r_squared)
        .def_readonly("residual_std", &OLSFit::residual_std)
        .def_readonly("n", &OLSFit::n)
        .def_readonly("x_mean", &OLSFit::x_mean)
        .def_readonly("s_xx", &OLSFit::s_xx);

    py::class_<BandPoint>(m, "BandPoint")
        .def_readonly("x", &BandPoint::x)
        .def_readonly("y_fit", &BandPoint::y_fit)
        .def_readonly("half_width", &BandPoint::half_width);

    py::class_<DesignedPair>(m, "DesignedPair")
        .def_readonly("risky", &DesignedPair::risky)
        .def_readonly("riskless", &DesignedPair::riskless)
        .def_readonly("prediction_time", &DesignedPair::prediction_time)
        .def_readonly("prediction_ensemble", &DesignedPair::prediction_ensemble)
        .def_readonly("disagree", &DesignedPair::disagree);

    py::class_<KunstgriffEntryT<double>>(m, "KunstgriffEntry")
        .def_readonly("t1", &KunstgriffEntryT<double>::t1)
        .def_readonly("t2", &KunstgriffEntryT<double>::t2)
        .def_readonly("p", &KunstgriffEntryT<double>::p)
        .def_readonly("factor", &KunstgriffEntryT<double>::factor);

    py::class_<KunstgriffSweepT<double>>(m, "KunstgriffSweep")
        .def_readonly("entries", &KunstgriffSweepT<double>::entries)
        .def_readonly("min_factor", &KunstgriffSweepT<double>::min_factor)
        .def_readonly("max_factor", &KunstgriffSweepT<double>::max_factor)
        .def_readonly("setup_dependent", &KunstgriffSweepT<double>::setup_dependent);

    // lottery-core operations
    m.def("degenerate_of", &degenerate_of<double>, py::arg("lottery"));
    m.def("timed_payment_growth", &timed_payment_growth<double>, py::arg("tp"));
    m.def("to_general", py::overload_cast<const BinaryTimeLottery&>(&to_general<double>));
    m.def("to_general", py::overload_cast<const TimedPayment&>(&to_general<double>));
    m.def("ensemble_growth",
          py::overload_cast<const GeneralLottery&>(&ensemble_growth<double>));
    m.def("ensemble_growth",
          py::overload_cast<const BinaryTimeLottery&>(&ensemble_growth<double>));
    m.def("time_growth", py::overload_cast<const GeneralLottery&>(&time_growth<double>));
    m.def("time_growth", py::overload_cast<const BinaryTimeLottery&>(&time_growth<double>));
    m.def("growth_summary", py::overload_cast<const GeneralLottery&>(&growth_summary<double>));
    m.def("growth_summary",
          py::overload_cast<const BinaryTimeLottery&>(&growth_summary<double>));
    m.def("mix", &mix<double>, py::arg("a"), py::arg("b"), py::arg("theta"));
    m.def("effective_time", &effective_time<double>, py::arg("lottery"));
    m.def("kunstgriff_factor", &kunstgriff_factor<double>, py::arg("t1"), py::arg("t2"),
          py::arg("p"));
    m.def("kunstgriff_sweep", &kunstgriff_sweep<double>, py::arg("grid"));

    // preference operations
    m.def("compare", &compare<double>, py::arg("a"), py::arg("b"), py::arg("approach"));
    m.def("classify_pair", &classify_pair<double>, py::arg("lottery"), py::arg("approach"));
    m.def("continuity_weight", &continuity_weight<double>, py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("approach"));
    m.def("independence_check", &independence_check<double>, py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("theta"), py::arg("approach"));
    m.def("independence_counterexample_search", &independence_counterexample_search<double>,
          py::arg("config"), py::arg("budget"), py::arg("seed"),
          py::arg("approach") = Approach::time);
    m.def("axiom_suite", &run_axiom_suite, py::arg("samples"), py::arg("seed"),
          py::arg("approach"), py::arg("equal_payments") = true, py::arg("exact") = true,
          "Check the vNM axioms; exact=True runs the exact-rational backend.");

    // simulation
    m.def("simulate_sequential", &simulate_sequential, py::arg("lottery"), py::arg("config"));
    m.def("simulate_ensemble", &simulate_ensemble, py::arg("lottery"), py::arg("config"));
    m.def("convergence_series", &convergence_series, py::arg("lottery"), py::arg("mode"),
          py::arg("checkpoints"), py::arg("seed"));

    // empirics
    m.def("load_dataset",
          py::overload_cast<const std::string&, DatasetSchema>(&load_dataset),
          py::arg("csv_text"), py::arg("schema"));
    py::enum_<DatasetSchema>(m, "DatasetSchema")
        .value("rates", DatasetSchema::rates)
        .value("lotteries", DatasetSchema::lotteries);
    m.def("emit_rates_csv", &emit_rates_csv, py::arg("records"));
    m.def("audit", &audit, py::arg("records"));
    m.def("ols_fit", &ols_fit, py::arg("records"));
    m.def("confidence_band", &confidence_band, py::arg("fit"), py::arg("xs"));
    m.def("render_figure", &render_figure, py::arg("records"), py::arg("fit"), py::arg("band"),
          py::arg("format") = "svg");
    m.def("shipped_dataset", &shipped_dataset, py::arg("dataset"));
    m.def("shipped_dataset_csv", &shipped_dataset_csv, py::arg("dataset"));

    // experiment design
    m.def("disagreement_interval", &disagreement_interval<double>, py::arg("lottery"));
    m.def("design_adjust_times", &design_adjust_times<double>, py::arg("lottery"),
          py::arg("placement"));
    m.def("design_adjust_amounts", &design_adjust_amounts<double>, py::arg("lottery"),
          py::arg("amount_ratio"));
}
