#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gatesim/presets.hpp"
#include "gatesim/version.hpp"

namespace {

// Flag values land in the same key space as config files; flags win.
struct FlagValue {
    gatesim::Settings* settings;
    std::string key;

    void operator()(const std::string& value) const { (*settings)[key] = value; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gatesim: security-checkpoint queueing simulator and gate-count optimizer"};
    app.set_version_flag("--version", gatesim::kVersion);

    gatesim::Settings flags;
    std::string config_path;
    const auto bind = [&](const std::string& flag, const std::string& key,
                          const std::string& help) {
        app.add_option_function<std::string>(flag, FlagValue{&flags, key}, help);
    };

    std::string presets_help = "preset scenario (";
    for (std::size_t i = 0; i < gatesim::preset_names().size(); ++i)
        presets_help += (i ? "|" : "") + gatesim::preset_names()[i];
    presets_help += ")";

    bind("--preset", "preset", presets_help);
    app.add_option("--config", config_path, "flat key = value config file");
    bind("--lambda", "lambda", "arrival rate, passengers per second");
    bind("--gates", "gates", "total open gates for a single run");
    bind("--gate-range", "gate_range", "sweep range LO:HI");
    bind("--mu", "mu", "mean service time, seconds");
    bind("--sigma2", "sigma2", "service time variance, seconds^2");
    bind("--horizon", "horizon", "arrival horizon, seconds");
    bind("--profile", "profile", "behavior profile (standard|usa|china|slower)");
    bind("--p-shortest", "p_shortest", "probability of seeking the shortest line");
    bind("--error-rate", "error_rate", "probability a shortest-line pick goes wrong");
    app.add_flag_function(
        "--single-lane", [&](std::int64_t) { flags["single_lane"] = "true"; },
        "disable the Pre-Check split");
    bind("--replications", "replications", "independent replications per gate count");
    bind("--seed", "seed", "base seed (replications use stream ids 0..R-1)");
    bind("--wait-cap", "wait_cap", "recommendation wait cap, seconds");
    bind("--criterion", "criterion", "recommendation rule (min-gates|min-pro-v)");
    app.add_flag_function(
        "--dump-passengers", [&](std::int64_t) { flags["dump_passengers"] = "true"; },
        "write per-passenger records");
    bind("--out", "out", "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        gatesim::Settings settings;
        if (!config_path.empty()) settings = gatesim::parse_config_file(config_path);
        gatesim::merge_settings(settings, flags);
        return gatesim::execute_run(settings, std::cout);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
