#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gatesim/engine.hpp"

namespace gatesim {

/// One gate count of a sweep, averaged over replications. pro_a and pro_v are
/// exactly cost_per_gate * gates * W_s and * V_s.
struct SweepRow {
    int gates = 0;
    double mean_wait = 0.0;      // W_s, pooled over all replications' passengers
    double wait_stderr = 0.0;    // std of per-replication means / sqrt(R)
    double wait_variance = 0.0;  // V_s of the pooled wait sample
    double pro_a = 0.0;
    double pro_v = 0.0;
    double rho_regular = 0.0;
    double rho_precheck = 0.0;
    double tail_fraction_2h = 0.0;
    int replications = 0;
    bool feasible = true;
};

enum class RecommendCriterion { min_gates_under_cap, min_pro_v_under_cap };

std::string criterion_name(RecommendCriterion c);

struct RecommendationPolicy {
    double wait_cap = 1830.0;  // seconds; just above the half-hour target
    RecommendCriterion criterion = RecommendCriterion::min_gates_under_cap;
    double cost_per_gate = 1.0;
};

void validate(const RecommendationPolicy& policy);

struct Recommendation {
    int gates = 0;
    RecommendCriterion criterion = RecommendCriterion::min_gates_under_cap;
    double wait_cap = 0.0;
    double mean_wait = 0.0;
    double pro_v = 0.0;
    std::string justification;
};

/// (pro_a, pro_v) = (C*S*W_s, C*S*V_s).
std::pair<double, double> cost_products(int gates, double mean_wait, double wait_variance,
                                        double cost_per_gate);

/// Run the scenario at every gate count in [gate_lo, gate_hi] with
/// replications on stream ids 0..R-1 and aggregate. Replications may execute
/// on several threads; rows are reduced in stream-id order, so the result is
/// identical regardless of scheduling. A gate count whose allocation is
/// infeasible becomes a feasible=false row instead of an error.
std::vector<SweepRow> sweep_gates(const ScenarioConfig& base, int gate_lo, int gate_hi,
                                  int replications, const RecommendationPolicy& policy,
                                  unsigned threads = 0);

/// Smallest gate count under the wait cap, or the pro_v argmin among rows
/// under the cap (ties to fewer gates). Throws NoFeasibleGateCount when no
/// feasible row meets the cap.
Recommendation recommend_gates(const std::vector<SweepRow>& rows,
                               const RecommendationPolicy& policy);

}  // namespace gatesim
