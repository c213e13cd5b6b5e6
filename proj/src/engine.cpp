#include "gatesim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

#include "gatesim/errors.hpp"

namespace gatesim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailThresholdSeconds = 7200.0;
}  // namespace

std::optional<BehaviorProfile> profile_by_name(const std::string& name) {
    for (const auto& p : all_profiles())
        if (p.name == name) return p;
    return std::nullopt;
}

const std::vector<BehaviorProfile>& all_profiles() {
    static const std::vector<BehaviorProfile> profiles = {
        BehaviorProfile::standard(), BehaviorProfile::usa(),
        BehaviorProfile::china(), BehaviorProfile::slower()};
    return profiles;
}

void validate(const ScenarioConfig& config) {
    validate(config.arrival);
    validate(config.service_regular);
    if (config.total_gates < 1)
        throw ConfigError("gates: must be >= 1");
    if (!(config.behavior.p_shortest >= 0.0 && config.behavior.p_shortest <= 1.0))
        throw ConfigError("p_shortest: must be in [0,1]");
    if (!(config.behavior.error_rate >= 0.0 && config.behavior.error_rate <= 1.0))
        throw ConfigError("error_rate: must be in [0,1]");
    if (!(config.trace_interval_s > 0.0))
        throw ConfigError("trace_interval: must be > 0");
    if (config.split)
        allocate_gates(config.total_gates, *config.split);  // throws when infeasible
}

ServiceLaw precheck_service_law(const ScenarioConfig& config) {
    if (!config.split)
        throw ConfigError("single_lane: scenario has no precheck lane");
    return config.service_regular.scaled_down(config.split->service_speed_ratio);
}

int choose_queue(const std::vector<int>& queue_lengths, const BehaviorProfile& behavior,
                 RngStream& rng) {
    const std::size_t n = queue_lengths.size();
    if (n == 0)
        throw std::invalid_argument("choose_queue: no queues");
    if (n == 1) return 0;

    const bool seeks_shortest =
        behavior.p_shortest >= 1.0 ||
        (behavior.p_shortest > 0.0 && rng.next_bernoulli(behavior.p_shortest));
    if (!seeks_shortest)
        return static_cast<int>(rng.next_index(n));

    const int min_len = *std::min_element(queue_lengths.begin(), queue_lengths.end());
    const bool errs =
        behavior.error_rate >= 1.0 ||
        (behavior.error_rate > 0.0 && rng.next_bernoulli(behavior.error_rate));
    if (errs) {
        // mistaken pick: uniform over the strictly longer queues, if any
        std::size_t longer = 0;
        for (int len : queue_lengths)
            if (len > min_len) ++longer;
        if (longer > 0) {
            std::size_t k = rng.next_index(longer);
            for (std::size_t i = 0; i < n; ++i) {
                if (queue_lengths[i] > min_len && k-- == 0) return static_cast<int>(i);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (queue_lengths[i] == min_len) return static_cast<int>(i);
    return 0;  // unreachable
}

namespace {

struct Departure {
    double time;
    std::int64_t pid;
    int gate;
};
struct DepartureLater {
    bool operator()(const Departure& a, const Departure& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.pid > b.pid;
    }
};

// Gates [0, regular) serve the regular class, [regular, total) Pre-Check.
struct LaneLayout {
    int first = 0;
    int count = 0;
};

}  // namespace

SimResult run_simulation(const ScenarioConfig& config, bool keep_records) {
    validate(config);

    RngStream rng(config.seed, config.replication);
    const std::vector<double> arrivals = poisson_arrival_times(config.arrival, rng);
    const double horizon = config.arrival.horizon;

    GateAllocation alloc{config.total_gates, 0};
    if (config.split) alloc = allocate_gates(config.total_gates, *config.split);
    const std::array<LaneLayout, 2> layout = {LaneLayout{0, alloc.regular},
                                              LaneLayout{alloc.regular, alloc.precheck}};
    const std::array<ServiceLaw, 2> law = {
        config.service_regular,
        config.split ? precheck_service_law(config) : config.service_regular};

    std::vector<PassengerRecord> records;
    records.reserve(arrivals.size());

    std::vector<std::deque<std::int64_t>> lines(config.total_gates);
    std::array<std::deque<std::int64_t>, 2> pooled_lines;
    std::vector<char> gate_busy(config.total_gates, 0);

    std::priority_queue<Departure, std::vector<Departure>, DepartureLater> departures;
    std::vector<int> lengths;

    const auto start_service = [&](std::int64_t pid, int gate, double now) {
        PassengerRecord& rec = records[static_cast<std::size_t>(pid)];
        const double duration = sample_service_time(law[static_cast<int>(rec.lane)], rng);
        rec.queue_index = gate;
        rec.service_start = now;
        rec.service_duration = duration;
        rec.departure = now + duration;
        gate_busy[gate] = 1;
        departures.push({rec.departure, pid, gate});
    };

    const auto lowest_idle_gate = [&](const LaneLayout& lane) {
        for (int g = lane.first; g < lane.first + lane.count; ++g)
            if (!gate_busy[g]) return g;
        return -1;
    };

    std::size_t next_arrival = 0;
    while (true) {
        const bool have_arrival = next_arrival < arrivals.size();
        const bool have_departure = !departures.empty();
        if (!have_arrival && !have_departure) break;

        const bool take_departure =
            have_departure &&
            (!have_arrival || departures.top().time <= arrivals[next_arrival]);

        if (take_departure) {
            const Departure dep = departures.top();
            if (!config.drain_after_horizon && dep.time > horizon)
                break;  // freeze: whoever is left is residual
            departures.pop();
            records[static_cast<std::size_t>(dep.pid)].served = true;
            gate_busy[dep.gate] = 0;
            const int lane_idx = dep.gate < alloc.regular ? 0 : 1;
            if (config.discipline == QueueDiscipline::per_gate) {
                auto& line = lines[dep.gate];
                line.pop_front();
                if (!line.empty()) start_service(line.front(), dep.gate, dep.time);
            } else {
                auto& line = pooled_lines[lane_idx];
                if (!line.empty()) {
                    const std::int64_t pid = line.front();
                    line.pop_front();
                    start_service(pid, dep.gate, dep.time);
                }
            }
            continue;
        }

        const double now = arrivals[next_arrival];
        const auto pid = static_cast<std::int64_t>(next_arrival);
        ++next_arrival;

        PassengerRecord rec;
        rec.id = pid;
        rec.arrival_time = now;
        rec.lane = config.split ? classify_lane(config.split->precheck_fraction, rng)
                                : LaneClass::regular;
        rec.service_start = kInf;
        rec.departure = kInf;
        records.push_back(rec);

        const LaneLayout& lane = layout[static_cast<int>(rec.lane)];
        if (config.discipline == QueueDiscipline::per_gate) {
            lengths.resize(static_cast<std::size_t>(lane.count));
            for (int i = 0; i < lane.count; ++i)
                lengths[i] = static_cast<int>(lines[lane.first + i].size());
            const int gate = lane.first + choose_queue(lengths, config.behavior, rng);
            records.back().queue_index = gate;
            lines[gate].push_back(pid);
            if (lines[gate].size() == 1) start_service(pid, gate, now);
        } else {
            const int gate = lowest_idle_gate(lane);
            if (gate >= 0)
                start_service(pid, gate, now);
            else
                pooled_lines[static_cast<int>(rec.lane)].push_back(pid);
        }
    }

    SimResult result;
    result.metrics = compute_metrics(records, horizon, config.trace_interval_s);
    if (keep_records) result.records = std::move(records);
    return result;
}

SimMetrics compute_metrics(const std::vector<PassengerRecord>& records, double horizon,
                           double trace_interval_s) {
    SimMetrics m;
    m.arrived_count = static_cast<std::int64_t>(records.size());

    std::array<double, 2> wait_sum{}, sojourn_sum{};
    for (const auto& rec : records) {
        const int lane = static_cast<int>(rec.lane);
        ++m.per_lane[lane].arrived;
        if (!rec.served) continue;
        ++m.per_lane[lane].served;
        wait_sum[lane] += rec.wait();
        sojourn_sum[lane] += rec.wait() + rec.service_duration;
        if (rec.wait() > kTailThresholdSeconds) ++m.tail_count_2h;
    }
    m.served_count = m.per_lane[0].served + m.per_lane[1].served;
    m.residual_in_system = m.arrived_count - m.served_count;

    if (m.served_count > 0) {
        const double total_wait = wait_sum[0] + wait_sum[1];
        m.mean_wait = total_wait / static_cast<double>(m.served_count);
        m.mean_sojourn = (sojourn_sum[0] + sojourn_sum[1]) / static_cast<double>(m.served_count);
        m.tail_fraction_2h = static_cast<double>(m.tail_count_2h) /
                             static_cast<double>(m.served_count);

        std::array<double, 2> sq_dev{};  // against the pooled mean
        std::array<double, 2> sq_dev_lane{};
        std::array<std::int64_t, 2> tail_lane{};
        std::array<double, 2> lane_mean{};
        for (int lane = 0; lane < 2; ++lane)
            if (m.per_lane[lane].served > 0)
                lane_mean[lane] = wait_sum[lane] / static_cast<double>(m.per_lane[lane].served);
        for (const auto& rec : records) {
            if (!rec.served) continue;
            const int lane = static_cast<int>(rec.lane);
            const double w = rec.wait();
            sq_dev[lane] += (w - m.mean_wait) * (w - m.mean_wait);
            sq_dev_lane[lane] += (w - lane_mean[lane]) * (w - lane_mean[lane]);
            if (w > kTailThresholdSeconds) ++tail_lane[lane];
        }
        m.wait_variance = (sq_dev[0] + sq_dev[1]) / static_cast<double>(m.served_count);
        for (int lane = 0; lane < 2; ++lane) {
            auto& ls = m.per_lane[lane];
            ls.residual = ls.arrived - ls.served;
            if (ls.served == 0) continue;
            ls.mean_wait = lane_mean[lane];
            ls.wait_variance = sq_dev_lane[lane] / static_cast<double>(ls.served);
            ls.tail_fraction_2h = static_cast<double>(tail_lane[lane]) /
                                  static_cast<double>(ls.served);
        }
    } else {
        for (auto& ls : m.per_lane) ls.residual = ls.arrived;
    }

    if (records.empty()) return m;  // empty trace for an empty run

    // Waiting counts on the grid: a passenger waits at t when
    // arrival <= t < service_start.
    struct Edge {
        double time;
        int lane;
    };
    std::vector<Edge> begins, ends;
    begins.reserve(records.size());
    ends.reserve(records.size());
    for (const auto& rec : records) {
        begins.push_back({rec.arrival_time, static_cast<int>(rec.lane)});
        if (rec.service_start < kInf)
            ends.push_back({rec.service_start, static_cast<int>(rec.lane)});
    }
    const auto by_time = [](const Edge& a, const Edge& b) { return a.time < b.time; };
    std::sort(begins.begin(), begins.end(), by_time);
    std::sort(ends.begin(), ends.end(), by_time);

    const auto points = static_cast<std::size_t>(std::floor(horizon / trace_interval_s)) + 1;
    m.queue_length_trace.reserve(points);
    std::size_t bi = 0, ei = 0;
    std::array<std::int64_t, 2> waiting{};
    for (std::size_t k = 0; k < points; ++k) {
        const double t = static_cast<double>(k) * trace_interval_s;
        while (bi < begins.size() && begins[bi].time <= t) ++waiting[begins[bi++].lane];
        while (ei < ends.size() && ends[ei].time <= t) --waiting[ends[ei++].lane];
        m.queue_length_trace.push_back({t, waiting[0] + waiting[1], waiting[0], waiting[1]});
    }
    return m;
}

}  // namespace gatesim
