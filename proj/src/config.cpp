#include "gatesim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gatesim/csv.hpp"
#include "gatesim/errors.hpp"

namespace gatesim {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "preset",       "lambda",            "mu",
        "sigma2",       "service",           "horizon",
        "gates",        "gate_range",        "profile",
        "p_shortest",   "error_rate",        "single_lane",
        "precheck_fraction", "gate_ratio",   "service_speed_ratio",
        "discipline",   "drain",             "trace_interval",
        "replications", "seed",              "wait_cap",
        "criterion",    "cost_per_gate",     "dump_passengers",
        "out",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last || std::isnan(out))
        throw ConfigError(key + ": not a number: '" + value + "'");
    return out;
}

long long parse_int(const std::string& key, const std::string& value) {
    long long out = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError(key + ": not an integer: '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError(key + ": not an unsigned integer: '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": not a boolean: '" + value + "'");
}

std::pair<int, int> parse_range(const std::string& key, const std::string& value) {
    const auto colon = value.find(':');
    if (colon == std::string::npos)
        throw ConfigError(key + ": expected LO:HI, got '" + value + "'");
    const auto lo = parse_int(key, value.substr(0, colon));
    const auto hi = parse_int(key, value.substr(colon + 1));
    if (lo < 1 || hi < lo)
        throw ConfigError(key + ": invalid range " + value);
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

const std::string* find(const Settings& s, const std::string& key) {
    const auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
}

}  // namespace

Settings parse_config_text(const std::string& text) {
    Settings out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().count(key))
            throw ConfigError("unknown key: " + key);
        out[key] = value;
    }
    return out;
}

Settings parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void merge_settings(Settings& base, const Settings& overrides) {
    for (const auto& [key, value] : overrides) base[key] = value;
}

ResolvedRun resolve_run(const Settings& settings) {
    for (const auto& [key, value] : settings) {
        (void)value;
        if (!known_keys().count(key))
            throw ConfigError("unknown key: " + key);
    }

    ResolvedRun run;
    ScenarioConfig& sc = run.scenario;

    // lane structure first: single_lane contradicts explicit split settings
    const bool single_lane =
        find(settings, "single_lane") &&
        parse_bool("single_lane", *find(settings, "single_lane"));
    static const char* split_keys[] = {"precheck_fraction", "gate_ratio",
                                       "service_speed_ratio"};
    if (single_lane) {
        for (const char* key : split_keys)
            if (find(settings, key))
                throw ConfigError(std::string("single_lane: contradicts ") + key);
        sc.split.reset();
    } else {
        LaneSplitSpec split;
        if (const auto* v = find(settings, "precheck_fraction"))
            split.precheck_fraction = parse_double("precheck_fraction", *v);
        if (const auto* v = find(settings, "gate_ratio")) {
            const auto [reg, pre] = parse_range("gate_ratio", *v);
            split.ratio_regular = reg;
            split.ratio_precheck = pre;
        }
        if (const auto* v = find(settings, "service_speed_ratio"))
            split.service_speed_ratio = parse_double("service_speed_ratio", *v);
        validate(split);
        sc.split = split;
    }

    if (const auto* v = find(settings, "lambda")) {
        sc.arrival.rate = parse_double("lambda", *v);
        if (!(sc.arrival.rate >= 0.0))
            throw ConfigError("lambda: must be >= 0");
    }
    if (const auto* v = find(settings, "horizon")) {
        sc.arrival.horizon = parse_double("horizon", *v);
        if (!(sc.arrival.horizon > 0.0))
            throw ConfigError("horizon: must be > 0");
    }
    if (const auto* v = find(settings, "mu")) {
        sc.service_regular.mean = parse_double("mu", *v);
        if (!(sc.service_regular.mean > 0.0))
            throw ConfigError("mu: must be > 0");
    }
    if (const auto* v = find(settings, "sigma2")) {
        const double sigma2 = parse_double("sigma2", *v);
        if (!(sigma2 >= 0.0))
            throw ConfigError("sigma2: must be >= 0");
        sc.service_regular.std = std::sqrt(sigma2);
    }
    if (const auto* v = find(settings, "service")) {
        if (*v == "constant")
            sc.service_regular.kind = ServiceKind::constant;
        else if (*v == "gaussian")
            sc.service_regular.kind = ServiceKind::gaussian_truncated;
        else if (*v == "exponential")
            sc.service_regular.kind = ServiceKind::exponential;
        else
            throw ConfigError("service: unknown kind '" + *v + "'");
    }
    if (const auto* v = find(settings, "gates")) {
        sc.total_gates = static_cast<int>(parse_int("gates", *v));
        if (sc.total_gates < 1)
            throw ConfigError("gates: must be >= 1");
    }

    if (const auto* v = find(settings, "profile")) {
        const auto profile = profile_by_name(*v);
        if (!profile)
            throw ConfigError("profile: unknown profile '" + *v + "'");
        sc.behavior = *profile;
    }
    if (const auto* v = find(settings, "p_shortest")) {
        sc.behavior.p_shortest = parse_double("p_shortest", *v);
        if (!(sc.behavior.p_shortest >= 0.0 && sc.behavior.p_shortest <= 1.0))
            throw ConfigError("p_shortest: must be in [0,1], got " + *v);
        sc.behavior.name = "custom";
    }
    if (const auto* v = find(settings, "error_rate")) {
        sc.behavior.error_rate = parse_double("error_rate", *v);
        if (!(sc.behavior.error_rate >= 0.0 && sc.behavior.error_rate <= 1.0))
            throw ConfigError("error_rate: must be in [0,1], got " + *v);
        if (!find(settings, "profile")) sc.behavior.name = "custom";
    }

    if (const auto* v = find(settings, "discipline")) {
        if (*v == "per-gate")
            sc.discipline = QueueDiscipline::per_gate;
        else if (*v == "pooled")
            sc.discipline = QueueDiscipline::pooled;
        else
            throw ConfigError("discipline: expected per-gate or pooled, got '" + *v + "'");
    }
    if (const auto* v = find(settings, "drain"))
        sc.drain_after_horizon = parse_bool("drain", *v);
    if (const auto* v = find(settings, "trace_interval")) {
        sc.trace_interval_s = parse_double("trace_interval", *v);
        if (!(sc.trace_interval_s > 0.0))
            throw ConfigError("trace_interval: must be > 0");
    }
    if (const auto* v = find(settings, "seed"))
        sc.seed = parse_u64("seed", *v);

    if (const auto* v = find(settings, "wait_cap")) {
        run.policy.wait_cap = parse_double("wait_cap", *v);
        if (!(run.policy.wait_cap > 0.0))
            throw ConfigError("wait_cap: must be > 0");
    }
    if (const auto* v = find(settings, "criterion")) {
        if (*v == "min-gates")
            run.policy.criterion = RecommendCriterion::min_gates_under_cap;
        else if (*v == "min-pro-v")
            run.policy.criterion = RecommendCriterion::min_pro_v_under_cap;
        else
            throw ConfigError("criterion: expected min-gates or min-pro-v, got '" + *v + "'");
    }
    if (const auto* v = find(settings, "cost_per_gate")) {
        run.policy.cost_per_gate = parse_double("cost_per_gate", *v);
        if (!(run.policy.cost_per_gate > 0.0))
            throw ConfigError("cost_per_gate: must be > 0");
    }

    if (const auto* v = find(settings, "preset"))
        run.options.preset = *v;
    if (const auto* v = find(settings, "gate_range"))
        run.options.gate_range = parse_range("gate_range", *v);
    if (const auto* v = find(settings, "replications")) {
        run.options.replications = static_cast<int>(parse_int("replications", *v));
        if (run.options.replications < 1)
            throw ConfigError("replications: must be >= 1");
    }
    if (const auto* v = find(settings, "dump_passengers"))
        run.options.dump_passengers = parse_bool("dump_passengers", *v);
    if (const auto* v = find(settings, "out"))
        run.options.out_dir = *v;

    validate(run.scenario);
    validate(run.policy);
    return run;
}

Settings resolved_settings(const ResolvedRun& run) {
    Settings s;
    const ScenarioConfig& sc = run.scenario;
    if (!run.options.preset.empty()) s["preset"] = run.options.preset;
    s["lambda"] = format_double(sc.arrival.rate);
    s["horizon"] = format_double(sc.arrival.horizon);
    s["mu"] = format_double(sc.service_regular.mean);
    s["sigma2"] = format_double(sc.service_regular.std * sc.service_regular.std);
    switch (sc.service_regular.kind) {
    case ServiceKind::constant: s["service"] = "constant"; break;
    case ServiceKind::gaussian_truncated: s["service"] = "gaussian"; break;
    case ServiceKind::exponential: s["service"] = "exponential"; break;
    }
    s["gates"] = std::to_string(sc.total_gates);
    if (run.options.gate_range)
        s["gate_range"] = std::to_string(run.options.gate_range->first) + ":" +
                          std::to_string(run.options.gate_range->second);
    if (sc.split) {
        s["single_lane"] = "false";
        s["precheck_fraction"] = format_double(sc.split->precheck_fraction);
        s["gate_ratio"] = std::to_string(sc.split->ratio_regular) + ":" +
                          std::to_string(sc.split->ratio_precheck);
        s["service_speed_ratio"] = format_double(sc.split->service_speed_ratio);
    } else {
        s["single_lane"] = "true";
    }
    if (sc.behavior.name != "custom") s["profile"] = sc.behavior.name;
    s["p_shortest"] = format_double(sc.behavior.p_shortest);
    s["error_rate"] = format_double(sc.behavior.error_rate);
    s["discipline"] =
        sc.discipline == QueueDiscipline::per_gate ? "per-gate" : "pooled";
    s["drain"] = sc.drain_after_horizon ? "true" : "false";
    s["trace_interval"] = format_double(sc.trace_interval_s);
    s["seed"] = std::to_string(sc.seed);
    s["replications"] = std::to_string(run.options.replications);
    s["wait_cap"] = format_double(run.policy.wait_cap);
    s["criterion"] = criterion_name(run.policy.criterion);
    s["cost_per_gate"] = format_double(run.policy.cost_per_gate);
    s["dump_passengers"] = run.options.dump_passengers ? "true" : "false";
    return s;
}

}  // namespace gatesim
