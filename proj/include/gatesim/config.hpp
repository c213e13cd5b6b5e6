#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gatesim/engine.hpp"
#include "gatesim/optimizer.hpp"

namespace gatesim {

/// Raw `key = value` settings, explicit keys only. std::map keeps a canonical
/// key order everywhere (manifests, error messages).
using Settings = std::map<std::string, std::string>;

/// Parse a flat UTF-8 config file: one `key = value` per line, `#` comments.
/// Unknown keys are rejected with the key named.
Settings parse_config_file(const std::string& path);
Settings parse_config_text(const std::string& text);

/// Later settings win.
void merge_settings(Settings& base, const Settings& overrides);

struct RunOptions {
    std::string preset;  // empty for a plain run
    std::optional<std::pair<int, int>> gate_range;
    int replications = 20;
    bool dump_passengers = false;
    std::string out_dir = ".";
};

struct ResolvedRun {
    ScenarioConfig scenario;
    RecommendationPolicy policy;
    RunOptions options;
};

/// Materialize a full run from explicit settings: unset values take the ORD
/// defaults (lambda 0.81333/s, mu 39.02 s, sigma^2 191.68 s^2, horizon
/// 64800 s, dual-lane split, standard profile, seed 42). Throws ConfigError
/// naming the offending key on unknown keys, out-of-range values, or
/// contradictory lane settings.
ResolvedRun resolve_run(const Settings& settings);

/// Every key materialized from the resolved run; parsing these settings again
/// reproduces the run exactly.
Settings resolved_settings(const ResolvedRun& run);

}  // namespace gatesim
