#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gatesim/analytics.hpp"
#include "gatesim/sampling.hpp"

namespace gatesim {

/// Queue-choice behavior: p_shortest is the probability a passenger looks for
/// the shortest line at all, error_rate the probability that attempt picks a
/// wrong (non-shortest) line.
struct BehaviorProfile {
    double p_shortest = 1.0;
    double error_rate = 0.0;
    std::string name = "standard";

    static BehaviorProfile standard() { return {1.00, 0.00, "standard"}; }
    static BehaviorProfile usa() { return {0.50, 0.10, "usa"}; }
    static BehaviorProfile china() { return {0.80, 0.05, "china"}; }
    static BehaviorProfile slower() { return {0.00, 0.05, "slower"}; }
};

std::optional<BehaviorProfile> profile_by_name(const std::string& name);
const std::vector<BehaviorProfile>& all_profiles();

/// per_gate: one FIFO line per gate, passengers pick a line on arrival and
/// stay (the checkpoint model). pooled: one FIFO line per lane class feeding
/// every gate of that class; this is the M/M/S system of the balance
/// equations and exists to validate the event kernel against Erlang-C.
enum class QueueDiscipline { per_gate, pooled };

struct ScenarioConfig {
    ArrivalLaw arrival{};
    ServiceLaw service_regular{};
    std::optional<LaneSplitSpec> split = LaneSplitSpec{};  // nullopt: single lane class
    int total_gates = 24;
    BehaviorProfile behavior = BehaviorProfile::standard();
    QueueDiscipline discipline = QueueDiscipline::per_gate;
    bool drain_after_horizon = true;
    double trace_interval_s = 10.0;
    std::uint64_t seed = 42;
    std::uint32_t replication = 0;  // rng stream id
};

void validate(const ScenarioConfig& config);

/// Service law of the Pre-Check lane: both scale parameters of the regular
/// law divided by the split's speed ratio.
ServiceLaw precheck_service_law(const ScenarioConfig& config);

struct PassengerRecord {
    std::int64_t id = 0;
    double arrival_time = 0.0;
    LaneClass lane = LaneClass::regular;
    int queue_index = -1;           // global gate index
    double service_start = 0.0;     // +inf when never reached a gate
    double service_duration = 0.0;
    double departure = 0.0;         // service_start + service_duration
    bool served = false;

    double wait() const { return service_start - arrival_time; }
};

struct TraceSample {
    double time = 0.0;
    std::int64_t waiting_total = 0;
    std::int64_t waiting_regular = 0;
    std::int64_t waiting_precheck = 0;
};

struct LaneStats {
    double mean_wait = 0.0;
    double wait_variance = 0.0;
    double tail_fraction_2h = 0.0;
    std::int64_t arrived = 0;
    std::int64_t served = 0;
    std::int64_t residual = 0;
};

struct SimMetrics {
    double mean_wait = 0.0;       // W_s over served passengers
    double wait_variance = 0.0;   // V_s, population variance
    double mean_sojourn = 0.0;    // wait + service, for comparison
    double tail_fraction_2h = 0.0;
    std::int64_t tail_count_2h = 0;
    std::int64_t arrived_count = 0;
    std::int64_t served_count = 0;
    std::int64_t residual_in_system = 0;
    std::array<LaneStats, 2> per_lane{};  // indexed by LaneClass
    std::vector<TraceSample> queue_length_trace;
};

struct SimResult {
    SimMetrics metrics;
    std::vector<PassengerRecord> records;  // empty unless requested
};

/// Pick a queue given the current lengths (waiting plus in-service). Ties for
/// shortest break toward the lowest index; a fired error redirects uniformly
/// among the strictly longer queues when any exist.
int choose_queue(const std::vector<int>& queue_lengths, const BehaviorProfile& behavior,
                 RngStream& rng);

/// Event-driven run over arrival and departure events in timestamp order
/// (departures first on ties, then by passenger ordinal). With
/// drain_after_horizon, arrivals stop at the horizon but everyone already in
/// the system is served and measured; otherwise the system freezes at the
/// horizon and whoever has not departed is reported as residual.
SimResult run_simulation(const ScenarioConfig& config, bool keep_records = false);

/// Aggregate per-passenger records: W_s and V_s over served passengers,
/// the > 2 h tail, conservation counts, and the waiting-count trace sampled
/// on the fixed interval grid over [0, horizon].
SimMetrics compute_metrics(const std::vector<PassengerRecord>& records, double horizon,
                           double trace_interval_s);

}  // namespace gatesim
