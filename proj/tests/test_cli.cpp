#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "timelot/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = timelot::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("eval prints the growth summary as JSON") {
    const auto res = run_cli({"eval", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx", "10"});
    REQUIRE(res.code == 0);
    const auto doc = json::parse(res.out);
    CHECK(doc["time_avg"].get<double>() == doctest::Approx(20.0 / 3.0));
    CHECK(doc["ensemble_avg"].get<double>() == doctest::Approx(7.5));
    CHECK(doc["jensen_gap"].get<double>() == doctest::Approx(5.0 / 6.0));
    CHECK(doc["unit"] == "unit/time");
}

TEST_CASE("classify prints the risk class per approach") {
    const auto time_only = run_cli({"classify", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx",
                                    "10", "--approach", "time"});
    CHECK(time_only.code == 0);
    CHECK(time_only.out == "RNTL\n");

    const auto both = run_cli({"classify", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx", "10"});
    CHECK(both.code == 0);
    CHECK(both.out == "time: RNTL\nensemble: RSTL\n");
}

TEST_CASE("mix combines two flag-given lotteries") {
    const auto res = run_cli({"mix", "--a-t1", "1", "--a-t2", "2", "--a-p", "0.5", "--a-dx", "10",
                              "--b-t1", "2", "--b-t2", "4", "--b-p", "0.3", "--b-dx", "2",
                              "--theta", "0.1"});
    REQUIRE(res.code == 0);
    const auto doc = json::parse(res.out);
    CHECK(doc["outcomes"].size() == 4);
    CHECK(doc["time_avg"].get<double>() == doctest::Approx(0.8722741433).epsilon(1e-9));
}

TEST_CASE("simulate emits SimResult JSON or a convergence CSV") {
    const auto res = run_cli({"simulate", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx", "10",
                              "--mode", "sequential", "--n", "10000", "--seed", "42"});
    REQUIRE(res.code == 0);
    const auto doc = json::parse(res.out);
    CHECK(doc["analytic_target"].get<double>() == doctest::Approx(20.0 / 3.0));
    CHECK(doc["tallies"].size() == 2);
    CHECK(doc["tallies"][0].get<std::uint64_t>() + doc["tallies"][1].get<std::uint64_t>() ==
          10000);

    const auto rerun = run_cli({"simulate", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx", "10",
                                "--mode", "sequential", "--n", "10000", "--seed", "42"});
    CHECK(rerun.out == res.out); // byte-deterministic

    const auto csv = run_cli({"simulate", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx", "10",
                              "--mode", "ensemble", "--seed", "7", "--checkpoints",
                              "10,100,1000"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("count,empirical_rate\n10,", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);
}

TEST_CASE("seed falls back to TIMELOT_SEED") {
    setenv("TIMELOT_SEED", "42", 1);
    const auto with_env = run_cli({"simulate", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx",
                                   "10", "--mode", "sequential", "--n", "1000"});
    unsetenv("TIMELOT_SEED");
    const auto with_flag = run_cli({"simulate", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx",
                                    "10", "--mode", "sequential", "--n", "1000", "--seed", "42"});
    CHECK(with_env.out == with_flag.out);
}

TEST_CASE("axioms reports pass/fail counts and exits 2 on violations") {
    const auto ok = run_cli({"axioms", "--approach", "ensemble", "--samples", "300", "--seed",
                             "3"});
    REQUIRE(ok.code == 0);
    const auto doc = json::parse(ok.out);
    CHECK(doc["mode"] == "exact-rational");
    CHECK(doc["all_passed"].get<bool>());
    CHECK(doc["independence"]["failed"].get<int>() == 0);

    const auto bad = run_cli({"axioms", "--approach", "time", "--samples", "300", "--seed", "3",
                              "--unequal-payments"});
    CHECK(bad.code == 2);
    const auto bad_doc = json::parse(bad.out);
    CHECK(bad_doc["independence"]["failed"].get<int>() > 0);
    CHECK(bad_doc["completeness"]["failed"].get<int>() == 0);
    REQUIRE(bad_doc.contains("independence_violations"));
    REQUIRE(!bad_doc["independence_violations"].empty());
    const auto& violation = bad_doc["independence_violations"][0];
    CHECK_FALSE(violation["holds"].get<bool>());
    CHECK(violation["g_mix_ab"].get<double>() > violation["g_mix_cb"].get<double>());
    CHECK(violation["triple"].size() == 3);

    const auto fast = run_cli({"axioms", "--approach", "ensemble", "--samples", "200", "--seed",
                               "3", "--no-exact"});
    CHECK(json::parse(fast.out)["mode"] == "float64");
}

TEST_CASE("reproduce figure embeds the published fit label") {
    const auto svg = run_cli({"reproduce", "figure", "--dataset", "dejarnette"});
    REQUIRE(svg.code == 0);
    CHECK(svg.out.find("R\xC2\xB2 = 0.66") != std::string::npos);
    CHECK(svg.out.find("<svg") != std::string::npos);

    const auto rerun = run_cli({"reproduce", "figure", "--dataset", "dejarnette"});
    CHECK(svg.out == rerun.out); // byte-deterministic

    const auto csv = run_cli({"reproduce", "figure", "--dataset", "onay", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("series,label,x,y,y_fit,band_lo,band_hi", 0) == 0);

    const auto tables = run_cli({"reproduce", "tables", "--dataset", "dejarnette"});
    REQUIRE(tables.code == 0);
    CHECK(tables.out.find("Q1 long") != std::string::npos);
    CHECK(tables.out.find("65.7") != std::string::npos);
}

TEST_CASE("audit exit codes distinguish clean and inconsistent datasets") {
    const auto onay = run_cli({"audit", "--dataset", "onay"});
    CHECK(onay.code == 2);
    const auto doc = json::parse(onay.out);
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["label"] == "Case 1");
    CHECK(doc[0]["severity"] == "inconsistent");
    CHECK(doc[0]["stated"].get<double>() == doctest::Approx(27.8));
    CHECK(doc[0]["recomputed"].get<double>() == doctest::Approx(17.7778).epsilon(1e-4));

    const auto dejarnette = run_cli({"audit", "--dataset", "dejarnette"});
    CHECK(dejarnette.code == 0);
    CHECK(json::parse(dejarnette.out).empty());
}

TEST_CASE("design emits DesignedPair JSON with documented field names") {
    const auto res = run_cli({"design", "times", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx",
                              "10", "--placement", "0.4"});
    REQUIRE(res.code == 0);
    const auto doc = json::parse(res.out);
    CHECK(doc["disagree"].get<bool>());
    CHECK(doc["risky"]["t1"].get<double>() == 1.0);
    CHECK(doc["riskless"]["time"].get<double>() == doctest::Approx(1.4));
    CHECK(doc["prediction_time"]["relation"] == "prefers_second");
    CHECK(doc["prediction_ensemble"]["relation"] == "prefers_first");
    CHECK(doc["prediction_time"]["g_second"].get<double>() == doctest::Approx(7.142857142857143));

    const auto amounts = run_cli({"design", "amounts", "--t1", "1", "--t2", "2", "--p", "0.5",
                                  "--dx", "10", "--ratio", "1.05"});
    REQUIRE(amounts.code == 0);
    CHECK(json::parse(amounts.out)["disagree"].get<bool>());
}

TEST_CASE("usage and validation failures exit 1") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"unknown"}).code == 1);
    CHECK(run_cli({"classify", "--t1", "1"}).code == 1);                   // missing flags
    CHECK(run_cli({"simulate", "--mode", "warp", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx",
                   "10"})
              .code == 1);
    CHECK(run_cli({"eval", "--t1", "3", "--t2", "2", "--p", "0.5", "--dx", "10"}).code == 1);
    CHECK(run_cli({"audit", "--dataset", "nonexistent"}).code == 1);
    CHECK(run_cli({"mix", "--a-t1", "1", "--a-t2", "2", "--a-p", "0.5", "--a-dx", "10",
                   "--theta", "0.5"})
              .code == 1); // missing side b
    const auto bad = run_cli({"eval", "--t1", "3", "--t2", "2", "--p", "0.5", "--dx", "10"});
    CHECK_FALSE(bad.err.empty());
    CHECK(bad.out.empty());
}

TEST_CASE("--version prints the tool version") {
    const auto res = run_cli({"--version"});
    CHECK(res.code == 0);
    CHECK(res.out == "timelot 0.1.0\n");
}

TEST_CASE("--out writes the primary output to a file") {
    const std::string path = "cli_test_output.json";
    const auto res = run_cli({"eval", "--t1", "1", "--t2", "2", "--p", "0.5", "--dx", "10",
                              "--out", path});
    REQUIRE(res.code == 0);
    CHECK(res.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    json doc;
    in >> doc;
    CHECK(doc["ensemble_avg"].get<double>() == doctest::Approx(7.5));
    std::remove(path.c_str());
}
