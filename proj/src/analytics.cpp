#include "gatesim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gatesim/errors.hpp"

namespace gatesim {

double LaneSplitSpec::implied_speed_ratio() const {
    const double f = precheck_fraction;
    return (static_cast<double>(ratio_regular) / ratio_precheck) * f / (1.0 - f);
}

void validate(const LaneSplitSpec& split) {
    if (!(split.precheck_fraction > 0.0 && split.precheck_fraction < 1.0))
        throw ConfigError("precheck_fraction: must be in (0,1)");
    if (split.ratio_regular < 1 || split.ratio_precheck < 1)
        throw ConfigError("gate_ratio: components must be positive integers");
    if (!(split.service_speed_ratio > 0.0))
        throw ConfigError("service_speed_ratio: must be > 0");
}

GateAllocation allocate_gates(int total_gates, const LaneSplitSpec& split) {
    validate(split);
    if (total_gates < 2)
        throw ConfigError("gates: dual-lane scenarios need at least 2 gates, got " +
                          std::to_string(total_gates));
    const int denom = split.ratio_regular + split.ratio_precheck;
    int precheck = total_gates * split.ratio_precheck / denom;  // floor
    precheck = std::clamp(precheck, 1, total_gates - 1);
    return {total_gates - precheck, precheck};
}

ClassLoads class_loads(double rate, double mean_service, const LaneSplitSpec& split) {
    const double f = split.precheck_fraction;
    return {(1.0 - f) * rate * mean_service,
            f * rate * mean_service / split.service_speed_ratio};
}

double utilization(double rate, int gates, double mean_service) {
    if (gates < 1)
        throw std::invalid_argument("gates must be >= 1");
    if (!(mean_service > 0.0))
        throw std::invalid_argument("mean_service must be > 0");
    if (!(rate >= 0.0))
        throw std::invalid_argument("rate must be >= 0");
    return rate * mean_service / static_cast<double>(gates);
}

int min_stable_total_gates(double rate, double mean_service, const LaneSplitSpec& split) {
    validate(split);
    if (!(rate >= 0.0) || !(mean_service > 0.0))
        throw std::invalid_argument("rate must be >= 0 and mean_service > 0");

    const ClassLoads load = class_loads(rate, mean_service, split);
    const auto stable = [&](int reg, int pre) {
        return reg >= 1 && pre >= 1 &&
               static_cast<double>(reg) > load.regular &&
               static_cast<double>(pre) > load.precheck;
    };

    for (int total = 2;; ++total) {
        const GateAllocation base = allocate_gates(total, split);
        if (stable(base.regular, base.precheck) ||
            stable(base.regular - 1, base.precheck + 1) ||
            stable(base.regular + 1, base.precheck - 1))
            return total;
    }
}

SteadyState birth_death_steady_state(double rate, double mean_service, int gates,
                                     int truncation_hint) {
    const double rho = utilization(rate, gates, mean_service);
    if (rho >= 1.0)
        throw UnstableError("no steady state: rho = " + std::to_string(rho));

    const double a = rate * mean_service;  // offered load in erlangs
    int n_trunc = gates + static_cast<int>(std::ceil(50.0 / (1.0 - rho)));
    n_trunc = std::max(n_trunc, truncation_hint);

    SteadyState out;
    while (true) {
        std::vector<double> weights(static_cast<std::size_t>(n_trunc) + 1);
        weights[0] = 1.0;
        double total = 1.0;
        for (int n = 1; n <= n_trunc; ++n) {
            weights[n] = weights[n - 1] * a / std::min(n, gates);
            total += weights[n];
        }
        // geometric tail beyond N: w_N * (rho + rho^2 + ...)
        const double tail = weights[n_trunc] * rho / (1.0 - rho);
        if (tail < 1e-9 * total) {
            for (auto& w : weights) w /= total;
            out.probabilities = std::move(weights);
            out.truncation_level = n_trunc;
            break;
        }
        n_trunc *= 2;
    }

    const auto& p = out.probabilities;
    const double death = 1.0 / mean_service;
    double worst = 0.0;
    for (int n = 1; n < out.truncation_level; ++n) {
        const double inflow = rate * p[n - 1] + std::min(n + 1, gates) * death * p[n + 1];
        const double outflow = (rate + std::min(n, gates) * death) * p[n];
        worst = std::max(worst, std::abs(inflow - outflow));
    }
    out.residual = worst;
    return out;
}

double erlang_c_wait_probability(double rate, double mean_service, int gates) {
    const double rho = utilization(rate, gates, mean_service);
    if (rho >= 1.0)
        throw UnstableError("no steady state: rho = " + std::to_string(rho));
    const double a = rate * mean_service;
    double erlang_b = 1.0;
    for (int k = 1; k <= gates; ++k)
        erlang_b = a * erlang_b / (k + a * erlang_b);
    return erlang_b / (1.0 - rho * (1.0 - erlang_b));
}

double erlang_c_mean_wait(double rate, double mean_service, int gates) {
    if (rate == 0.0) return 0.0;
    const double wait_prob = erlang_c_wait_probability(rate, mean_service, gates);
    return wait_prob / (gates / mean_service - rate);
}

}  // namespace gatesim
