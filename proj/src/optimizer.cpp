#include "gatesim/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gatesim/errors.hpp"

namespace gatesim {

std::string criterion_name(RecommendCriterion c) {
    return c == RecommendCriterion::min_gates_under_cap ? "min-gates" : "min-pro-v";
}

void validate(const RecommendationPolicy& policy) {
    if (!(policy.wait_cap > 0.0))
        throw ConfigError("wait_cap: must be > 0");
    if (!(policy.cost_per_gate > 0.0))
        throw ConfigError("cost_per_gate: must be > 0");
}

std::pair<double, double> cost_products(int gates, double mean_wait, double wait_variance,
                                        double cost_per_gate) {
    if (gates < 0 || !(mean_wait >= 0.0) || !(wait_variance >= 0.0) ||
        !(cost_per_gate >= 0.0))
        throw std::invalid_argument("cost_products: inputs must be >= 0");
    const double cost = cost_per_gate * static_cast<double>(gates);
    return {cost * mean_wait, cost * wait_variance};
}

namespace {

// Pooled count/mean/M2 across replications, combined in a fixed order.
struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void absorb(std::int64_t nb, double mean_b, double m2_b) {
        if (nb == 0) return;
        const double delta = mean_b - mean;
        const std::int64_t total = n + nb;
        mean += delta * static_cast<double>(nb) / static_cast<double>(total);
        m2 += m2_b + delta * delta * static_cast<double>(n) *
                         static_cast<double>(nb) / static_cast<double>(total);
        n = total;
    }
};

SweepRow reduce_replications(int gates, const std::vector<SimMetrics>& reps,
                             const ScenarioConfig& base, const RecommendationPolicy& policy) {
    SweepRow row;
    row.gates = gates;
    row.replications = static_cast<int>(reps.size());

    Moments pooled;
    std::int64_t tail = 0;
    std::vector<double> rep_means;
    rep_means.reserve(reps.size());
    for (const auto& m : reps) {
        pooled.absorb(m.served_count, m.mean_wait,
                      m.wait_variance * static_cast<double>(m.served_count));
        tail += m.tail_count_2h;
        rep_means.push_back(m.mean_wait);
    }
    if (pooled.n > 0) {
        row.mean_wait = pooled.mean;
        row.wait_variance = pooled.m2 / static_cast<double>(pooled.n);
        row.tail_fraction_2h = static_cast<double>(tail) / static_cast<double>(pooled.n);
    }
    if (rep_means.size() > 1) {
        double mean = 0.0;
        for (double v : rep_means) mean += v;
        mean /= static_cast<double>(rep_means.size());
        double ss = 0.0;
        for (double v : rep_means) ss += (v - mean) * (v - mean);
        const double sample_var = ss / static_cast<double>(rep_means.size() - 1);
        row.wait_stderr = std::sqrt(sample_var / static_cast<double>(rep_means.size()));
    }

    const auto [pro_a, pro_v] =
        cost_products(gates, row.mean_wait, row.wait_variance, policy.cost_per_gate);
    row.pro_a = pro_a;
    row.pro_v = pro_v;

    const double mu = base.service_regular.mean;
    if (base.split) {
        const GateAllocation alloc = allocate_gates(gates, *base.split);
        const ClassLoads load = class_loads(base.arrival.rate, mu, *base.split);
        row.rho_regular = load.regular / alloc.regular;
        row.rho_precheck = load.precheck / alloc.precheck;
    } else {
        row.rho_regular = utilization(base.arrival.rate, gates, mu);
        row.rho_precheck = 0.0;
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep_gates(const ScenarioConfig& base, int gate_lo, int gate_hi,
                                  int replications, const RecommendationPolicy& policy,
                                  unsigned threads) {
    validate(policy);
    if (gate_lo > gate_hi)
        throw ConfigError("gate_range: lower bound exceeds upper bound");
    if (gate_lo < 1)
        throw ConfigError("gate_range: gate counts start at 1");
    if (replications < 1)
        throw ConfigError("replications: must be >= 1");

    struct Task {
        int gate_index;
        std::uint32_t replication;
    };
    const int n_gates = gate_hi - gate_lo + 1;
    std::vector<char> gate_feasible(n_gates, 1);
    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(n_gates) * replications);
    for (int gi = 0; gi < n_gates; ++gi) {
        if (base.split) {
            try {
                ScenarioConfig probe = base;
                probe.total_gates = gate_lo + gi;
                validate(probe);
            } catch (const ConfigError&) {
                gate_feasible[gi] = 0;
                continue;
            }
        }
        for (int r = 0; r < replications; ++r)
            tasks.push_back({gi, static_cast<std::uint32_t>(r)});
    }

    std::vector<std::vector<SimMetrics>> results(n_gates);
    for (int gi = 0; gi < n_gates; ++gi)
        if (gate_feasible[gi]) results[gi].resize(replications);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(tasks.size(), 1));

    std::atomic<std::size_t> next_task{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next_task.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task task = tasks[i];
            try {
                ScenarioConfig cfg = base;
                cfg.total_gates = gate_lo + task.gate_index;
                cfg.replication = task.replication;
                results[task.gate_index][task.replication] =
                    run_simulation(cfg).metrics;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<SweepRow> rows;
    rows.reserve(n_gates);
    for (int gi = 0; gi < n_gates; ++gi) {
        if (!gate_feasible[gi]) {
            SweepRow row;
            row.gates = gate_lo + gi;
            row.replications = replications;
            row.feasible = false;
            rows.push_back(row);
            continue;
        }
        rows.push_back(reduce_replications(gate_lo + gi, results[gi], base, policy));
    }
    return rows;
}

Recommendation recommend_gates(const std::vector<SweepRow>& rows,
                               const RecommendationPolicy& policy) {
    validate(policy);
    std::vector<const SweepRow*> sorted;
    for (const auto& row : rows)
        if (row.feasible) sorted.push_back(&row);
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepRow* a, const SweepRow* b) { return a->gates < b->gates; });

    const SweepRow* pick = nullptr;
    for (const SweepRow* row : sorted) {
        if (row->mean_wait > policy.wait_cap) continue;
        if (policy.criterion == RecommendCriterion::min_gates_under_cap) {
            pick = row;
            break;
        }
        if (!pick || row->pro_v < pick->pro_v) pick = row;  // ties keep fewer gates
    }
    if (!pick)
        throw NoFeasibleGateCount("no gate count keeps W_s under " +
                                  std::to_string(policy.wait_cap) + " s");

    Recommendation rec;
    rec.gates = pick->gates;
    rec.criterion = policy.criterion;
    rec.wait_cap = policy.wait_cap;
    rec.mean_wait = pick->mean_wait;
    rec.pro_v = pick->pro_v;

    std::ostringstream text;
    text << "criterion " << criterion_name(policy.criterion) << ": ";
    if (policy.criterion == RecommendCriterion::min_gates_under_cap) {
        text << "smallest gate count with W_s <= " << policy.wait_cap << " s";
    } else {
        text << "smallest Pro_V among gate counts with W_s <= " << policy.wait_cap << " s";
    }
    text << "; picked S = " << pick->gates << " (W_s = " << pick->mean_wait
         << " s, Pro_V = " << pick->pro_v << ")";
    for (const SweepRow* row : sorted) {
        if (row->gates == pick->gates - 1 && row->mean_wait > policy.wait_cap) {
            text << "; S = " << row->gates << " exceeds the cap (W_s = "
                 << row->mean_wait << " s)";
            break;
        }
    }
    rec.justification = text.str();
    return rec;
}

}  // namespace gatesim
