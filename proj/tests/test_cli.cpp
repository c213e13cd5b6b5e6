#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gatesim/csv.hpp"
#include "gatesim/errors.hpp"
#include "gatesim/presets.hpp"

using namespace gatesim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("gatesim_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("empty settings resolve to the full ORD default scenario") {
    const auto run = resolve_run({});
    CHECK(run.scenario.arrival.rate == 0.81333);
    CHECK(run.scenario.arrival.horizon == 64800.0);
    CHECK(run.scenario.service_regular.mean == 39.02);
    CHECK(run.scenario.service_regular.std * run.scenario.service_regular.std ==
          doctest::Approx(191.68).epsilon(1e-12));
    CHECK(run.scenario.service_regular.kind == ServiceKind::gaussian_truncated);
    REQUIRE(run.scenario.split.has_value());
    CHECK(run.scenario.split->precheck_fraction == 0.45);
    CHECK(run.scenario.split->service_speed_ratio == 2.454);
    CHECK(run.scenario.behavior.name == "standard");
    CHECK(run.scenario.seed == 42);
    CHECK(run.scenario.drain_after_horizon);
    CHECK(run.policy.wait_cap == 1830.0);
    CHECK(run.policy.criterion == RecommendCriterion::min_gates_under_cap);
    CHECK(run.options.replications == 20);
}

TEST_CASE("config text parsing: comments, overrides, degenerate rate") {
    const auto settings = parse_config_text(
        "# scenario\nlambda = 0\ngates = 6   # six gates\n\nseed = 7\n");
    const auto run = resolve_run(settings);
    CHECK(run.scenario.arrival.rate == 0.0);
    CHECK(run.scenario.total_gates == 6);
    CHECK(run.scenario.seed == 7);
}

TEST_CASE("errors name the offending key") {
    const auto message_of = [](const Settings& s) {
        try {
            resolve_run(s);
            return std::string("no error");
        } catch (const ConfigError& err) {
            return std::string(err.what());
        }
    };
    CHECK(message_of({{"p_shortest", "1.3"}}).find("p_shortest") != std::string::npos);
    CHECK(message_of({{"lambda", "-2"}}).find("lambda") != std::string::npos);
    CHECK(message_of({{"mu", "0"}}).find("mu") != std::string::npos);
    CHECK(message_of({{"criterion", "best"}}).find("criterion") != std::string::npos);
    CHECK_THROWS_AS(parse_config_text("waitcap = 9\n"), ConfigError);
    CHECK(message_of({{"single_lane", "true"}, {"precheck_fraction", "0.3"}})
              .find("single_lane") != std::string::npos);
}

TEST_CASE("profile selection and field overrides") {
    auto run = resolve_run({{"profile", "china"}});
    CHECK(run.scenario.behavior.p_shortest == 0.80);
    CHECK(run.scenario.behavior.error_rate == 0.05);
    run = resolve_run({{"profile", "china"}, {"p_shortest", "0.6"}});
    CHECK(run.scenario.behavior.p_shortest == 0.6);
    CHECK(run.scenario.behavior.error_rate == 0.05);
    CHECK_THROWS_AS(resolve_run({{"profile", "swiss"}}), ConfigError);
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.0, 1.0, 0.81333, 39.02, 191.68, 1.0 / 3.0, 1812.000001,
                     6.02e23, 5e-324}) {
        const std::string s = format_double(v);
        double back = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == v);
    }
}

TEST_CASE("csv headers are pinned") {
    CHECK(sweep_csv({}) ==
          "gates,mean_wait_s,wait_stderr_s,wait_variance_s2,pro_a,pro_v,"
          "rho_regular,rho_precheck,tail_fraction_2h,replications,feasible\n");
    CHECK(trace_csv(std::vector<TraceSample>{}) ==
          "time_s,total_waiting,waiting_regular,waiting_precheck\n");
    CHECK(passengers_csv({}) ==
          "id,arrival_s,lane,queue_index,service_start_s,service_s,wait_s,departure_s\n");
    Recommendation rec;
    rec.gates = 21;
    rec.wait_cap = 1830.0;
    rec.mean_wait = 1700.0;
    rec.pro_v = 3.0e7;
    CHECK(recommendation_csv(rec).rfind(
              "recommended_gates,criterion,wait_cap_s,mean_wait_s,pro_v\n", 0) == 0);
}

TEST_CASE("trace csv writes one line per grid point") {
    std::vector<TraceSample> trace;
    for (int k = 0; k <= 12; ++k) trace.push_back({k * 10.0, k, k, 0});
    const std::string text = trace_csv(trace);
    CHECK(std::count(text.begin(), text.end(), '\n') == 14);  // header + 13
}

TEST_CASE("average_traces is the pointwise mean") {
    std::vector<std::vector<TraceSample>> traces = {
        {{0.0, 2, 2, 0}, {10.0, 4, 3, 1}},
        {{0.0, 0, 0, 0}, {10.0, 8, 5, 3}},
    };
    const auto mean = average_traces(traces);
    REQUIRE(mean.size() == 2);
    CHECK(mean[0].waiting_total == 1.0);
    CHECK(mean[1].waiting_total == 6.0);
    CHECK(mean[1].waiting_regular == 4.0);
    CHECK(mean[1].waiting_precheck == 2.0);
}

TEST_CASE("single run writes trace, optional passengers, and a manifest") {
    const fs::path dir = fresh_dir("single");
    std::ostringstream log;
    Settings s = {{"lambda", "0.2"}, {"gates", "4"},   {"horizon", "2000"},
                  {"seed", "42"},    {"out", dir.string()}, {"dump_passengers", "true"}};
    CHECK(execute_run(s, log) == 0);
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(fs::exists(dir / "passengers.csv"));
    CHECK(fs::exists(dir / "manifest.txt"));
    CHECK(!fs::exists(dir / "trace.csv.tmp"));

    const std::string trace = slurp(dir / "trace.csv");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 202);  // header + 201
}

TEST_CASE("a manifest reproduces byte-identical outputs") {
    const fs::path dir1 = fresh_dir("repro1");
    const fs::path dir2 = fresh_dir("repro2");
    std::ostringstream log;
    Settings s = {{"lambda", "0.4"},      {"gate_range", "18:20"}, {"horizon", "3000"},
                  {"replications", "3"},  {"seed", "11"},          {"out", dir1.string()}};
    REQUIRE(execute_run(s, log) == 0);

    Settings from_manifest = parse_config_file((dir1 / "manifest.txt").string());
    from_manifest["out"] = dir2.string();
    REQUIRE(execute_run(from_manifest, log) == 0);

    CHECK(slurp(dir1 / "sweep.csv") == slurp(dir2 / "sweep.csv"));
    CHECK(slurp(dir1 / "recommendation.csv") == slurp(dir2 / "recommendation.csv"));
}

TEST_CASE("preset defaults exist for every preset and reject strangers") {
    for (const auto& name : preset_names()) CHECK(!preset_defaults(name).empty());
    CHECK_THROWS_AS(preset_defaults("fastest"), ConfigError);
}

TEST_CASE("simple preset settings resolve to the saturated scenario") {
    auto settings = preset_defaults("simple");
    settings["out"] = "unused";
    const auto run = resolve_run(settings);
    CHECK(!run.scenario.split.has_value());
    CHECK(run.scenario.total_gates == 4);
    CHECK(run.scenario.service_regular.kind == ServiceKind::constant);
    CHECK(run.scenario.service_regular.mean == 39.0);
    CHECK(run.scenario.arrival.horizon == 20000.0);
    CHECK(run.options.dump_passengers);
}

TEST_CASE("sweep preset overrides still accept user settings on top") {
    auto settings = preset_defaults("sweep-ord");
    settings["replications"] = "2";
    const auto run = resolve_run(settings);
    CHECK(run.options.gate_range == std::pair{12, 28});
    CHECK(run.options.replications == 2);
    CHECK(run.scenario.arrival.horizon == 26000.0);
}
