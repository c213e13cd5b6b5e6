#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "gatesim/engine.hpp"
#include "gatesim/errors.hpp"
#include "oracles.hpp"

using namespace gatesim;

namespace {

PassengerRecord served_record(std::int64_t id, double arrival, double wait,
                              double service = 39.0,
                              LaneClass lane = LaneClass::regular) {
    PassengerRecord r;
    r.id = id;
    r.arrival_time = arrival;
    r.lane = lane;
    r.queue_index = 0;
    r.service_start = arrival + wait;
    r.service_duration = service;
    r.departure = r.service_start + service;
    r.served = true;
    return r;
}

ScenarioConfig simple_saturated() {
    ScenarioConfig cfg;
    cfg.arrival = {0.81333, 20000.0};
    cfg.service_regular = {ServiceKind::constant, 39.0, 0.0};
    cfg.split.reset();
    cfg.total_gates = 4;
    cfg.behavior = BehaviorProfile::standard();
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("choose_queue: standard profile takes the shortest, ties to low index") {
    RngStream rng(42);
    CHECK(choose_queue({3, 1, 2}, BehaviorProfile::standard(), rng) == 1);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RngStream r(seed);
        CHECK(choose_queue({5, 5, 5}, BehaviorProfile::standard(), r) == 0);
        CHECK(choose_queue({3, 1, 2}, BehaviorProfile::standard(), r) == 1);
    }
}

TEST_CASE("choose_queue: usa profile hits the shortest about 70% on [9,1]") {
    RngStream rng(42, 5);
    const auto usa = BehaviorProfile::usa();
    int shortest = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) shortest += choose_queue({9, 1}, usa, rng) == 1;
    // 0.5*0.9 (sought, no error) + 0.5*0.5 (uniform)
    CHECK(std::abs(shortest / double(n) - 0.70) < 0.01);
}

TEST_CASE("choose_queue: slower profile picks uniformly") {
    RngStream rng(42, 6);
    const auto slower = BehaviorProfile::slower();
    std::map<int, int> hits;
    const int n = 90000;
    for (int i = 0; i < n; ++i) ++hits[choose_queue({9, 1, 4}, slower, rng)];
    for (int q = 0; q < 3; ++q)
        CHECK(std::abs(hits[q] / double(n) - 1.0 / 3.0) < 0.01);
}

TEST_CASE("choose_queue: a fired error goes to a strictly longer queue") {
    RngStream rng(42, 7);
    BehaviorProfile always_wrong{1.0, 1.0, "wrong"};
    for (int i = 0; i < 1000; ++i) {
        const int pick = choose_queue({2, 7, 2, 9}, always_wrong, rng);
        CHECK((pick == 1 || pick == 3));
    }
    // no longer queue exists: stays on the shortest
    for (int i = 0; i < 100; ++i)
        CHECK(choose_queue({4, 4}, always_wrong, rng) == 0);
}

TEST_CASE("zero arrival rate yields an all-zero run") {
    ScenarioConfig cfg;
    cfg.arrival = {0.0, 3600.0};
    const auto result = run_simulation(cfg);
    CHECK(result.metrics.mean_wait == 0.0);
    CHECK(result.metrics.served_count == 0);
    CHECK(result.metrics.arrived_count == 0);
    CHECK(result.metrics.queue_length_trace.empty());
}

TEST_CASE("saturated simple model grows at the fluid rate") {
    const auto result = run_simulation(simple_saturated());
    const auto& trace = result.metrics.queue_length_trace;
    REQUIRE(trace.size() == 2001);  // floor(20000/10) + 1
    std::vector<double> t, waiting;
    for (const auto& s : trace) {
        t.push_back(s.time);
        waiting.push_back(static_cast<double>(s.waiting_total));
    }
    const double slope = oracle::least_squares_slope(t, waiting);
    const double fluid = 0.81333 - 4.0 / 39.0;  // 0.710766
    CHECK(std::abs(slope - fluid) < 0.05 * fluid);
    CHECK(static_cast<double>(trace.back().waiting_total) ==
          doctest::Approx(fluid * 20000.0).epsilon(0.05));
}

TEST_CASE("conservation holds with and without draining") {
    ScenarioConfig cfg = simple_saturated();
    cfg.drain_after_horizon = true;
    auto drained = run_simulation(cfg).metrics;
    CHECK(drained.arrived_count == drained.served_count + drained.residual_in_system);
    CHECK(drained.residual_in_system == 0);

    cfg.drain_after_horizon = false;
    auto frozen = run_simulation(cfg).metrics;
    CHECK(frozen.arrived_count == frozen.served_count + frozen.residual_in_system);
    CHECK(frozen.residual_in_system > 0);
    CHECK(frozen.arrived_count == drained.arrived_count);
}

TEST_CASE("records respect causality and per-gate FIFO") {
    ScenarioConfig cfg;
    cfg.arrival = {0.81333, 4000.0};
    cfg.total_gates = 21;
    cfg.seed = 99;
    const auto result = run_simulation(cfg, /*keep_records=*/true);
    REQUIRE(!result.records.empty());

    std::map<int, std::vector<const PassengerRecord*>> by_gate;
    for (const auto& rec : result.records) {
        CHECK(rec.served);
        CHECK(rec.service_start >= rec.arrival_time);
        CHECK(rec.departure == rec.service_start + rec.service_duration);
        CHECK(rec.wait() >= 0.0);
        by_gate[rec.queue_index].push_back(&rec);
    }
    for (const auto& [gate, recs] : by_gate) {
        (void)gate;
        for (std::size_t i = 1; i < recs.size(); ++i) {
            CHECK(recs[i]->arrival_time > recs[i - 1]->arrival_time);   // FIFO
            CHECK(recs[i]->service_start >= recs[i - 1]->departure);    // no overlap
        }
    }
}

TEST_CASE("identical configs give identical metrics, replicas differ") {
    ScenarioConfig cfg;
    cfg.arrival = {0.81333, 8000.0};
    cfg.total_gates = 24;
    const auto a = run_simulation(cfg).metrics;
    const auto b = run_simulation(cfg).metrics;
    CHECK(a.mean_wait == b.mean_wait);
    CHECK(a.wait_variance == b.wait_variance);
    CHECK(a.arrived_count == b.arrived_count);
    CHECK(a.queue_length_trace.size() == b.queue_length_trace.size());
    for (std::size_t i = 0; i < a.queue_length_trace.size(); ++i)
        CHECK(a.queue_length_trace[i].waiting_total ==
              b.queue_length_trace[i].waiting_total);

    cfg.replication = 1;
    const auto c = run_simulation(cfg).metrics;
    CHECK(c.arrived_count != a.arrived_count);
}

TEST_CASE("pooled discipline matches erlang-c on a moderate run") {
    ScenarioConfig cfg;
    cfg.arrival = {0.5 * 2 / 39.02, 400000.0};
    cfg.service_regular = {ServiceKind::exponential, 39.02, 0.0};
    cfg.split.reset();
    cfg.total_gates = 2;
    cfg.discipline = QueueDiscipline::pooled;
    cfg.seed = 42;
    const auto metrics = run_simulation(cfg).metrics;
    const double ref = erlang_c_mean_wait(cfg.arrival.rate, 39.02, 2);
    CHECK(metrics.mean_wait == doctest::Approx(ref).epsilon(0.10));
}

TEST_CASE("per-gate lines wait at least as long as the pooled line") {
    ScenarioConfig cfg;
    cfg.arrival = {0.8 * 8 / 39.02, 200000.0};
    cfg.service_regular = {ServiceKind::exponential, 39.02, 0.0};
    cfg.split.reset();
    cfg.total_gates = 8;
    cfg.seed = 3;
    const auto per_gate = run_simulation(cfg).metrics;
    cfg.discipline = QueueDiscipline::pooled;
    const auto pooled = run_simulation(cfg).metrics;
    CHECK(per_gate.mean_wait > pooled.mean_wait);
}

TEST_CASE("split scenario serves both lanes and partitions the gates") {
    ScenarioConfig cfg;
    cfg.arrival = {0.81333, 20000.0};
    cfg.total_gates = 24;
    cfg.seed = 11;
    const auto result = run_simulation(cfg, /*keep_records=*/true);
    const auto& lanes = result.metrics.per_lane;
    CHECK(lanes[0].arrived > 0);
    CHECK(lanes[1].arrived > 0);
    const double share =
        static_cast<double>(lanes[1].arrived) /
        static_cast<double>(lanes[0].arrived + lanes[1].arrived);
    CHECK(std::abs(share - 0.45) < 0.02);
    for (const auto& rec : result.records) {
        if (rec.lane == LaneClass::regular)
            CHECK(rec.queue_index < 18);
        else
            CHECK(rec.queue_index >= 18);
    }
}

TEST_CASE("compute_metrics on hand-built records") {
    std::vector<PassengerRecord> records = {served_record(0, 0.0, 10.0),
                                            served_record(1, 1.0, 20.0),
                                            served_record(2, 2.0, 30.0)};
    auto m = compute_metrics(records, 100.0, 10.0);
    CHECK(m.mean_wait == doctest::Approx(20.0));
    CHECK(m.wait_variance == doctest::Approx(200.0 / 3.0));
    CHECK(m.queue_length_trace.size() == 11);

    auto single = compute_metrics({served_record(0, 0.0, 5.0)}, 100.0, 10.0);
    CHECK(single.wait_variance == 0.0);

    std::vector<PassengerRecord> tails = {served_record(0, 0.0, 0.0),
                                          served_record(1, 0.0, 7201.0)};
    CHECK(compute_metrics(tails, 100.0, 10.0).tail_fraction_2h == doctest::Approx(0.5));

    // 7200 exactly is not "more than two hours"
    std::vector<PassengerRecord> edge = {served_record(0, 0.0, 7200.0)};
    CHECK(compute_metrics(edge, 100.0, 10.0).tail_fraction_2h == 0.0);

    CHECK(compute_metrics({}, 100.0, 10.0).arrived_count == 0);
}

TEST_CASE("scenario validation names the broken setting") {
    ScenarioConfig cfg;
    cfg.total_gates = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.total_gates = 1;  // split needs one gate per class
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.total_gates = 2;
    CHECK_NOTHROW(validate(cfg));
    cfg.behavior.p_shortest = 1.3;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("precheck service law scales both parameters") {
    ScenarioConfig cfg;
    const auto law = precheck_service_law(cfg);
    CHECK(law.mean == doctest::Approx(39.02 / 2.454));
    CHECK(law.std == doctest::Approx(cfg.service_regular.std / 2.454));
}
