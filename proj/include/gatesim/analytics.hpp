#pragma once

#include <cstdint>
#include <vector>

namespace gatesim {

/// Dual-lane split: fraction of Pre-Check passengers, the regular:precheck
/// gate ratio, and how much faster a Pre-Check service is (mu / mu_p).
struct LaneSplitSpec {
    double precheck_fraction = 0.45;
    int ratio_regular = 3;
    int ratio_precheck = 1;
    double service_speed_ratio = 2.454;

    /// Speed ratio implied by balancing per-class utilization at the gate
    /// ratio: (ratio_regular/ratio_precheck) * f/(1-f). 2.4545... at defaults.
    double implied_speed_ratio() const;
};

void validate(const LaneSplitSpec& split);

struct GateAllocation {
    int regular = 0;
    int precheck = 0;
    int total() const { return regular + precheck; }
};

/// Partition a total gate count between the lane classes. The precheck share
/// is floor(total * ratio_p / (ratio_r + ratio_p)), clamped so each class
/// keeps at least one gate. Throws ConfigError when total < 2.
GateAllocation allocate_gates(int total_gates, const LaneSplitSpec& split);

/// Offered load per lane class, in gates (erlangs): regular class sees
/// (1-f) * rate * mean_service, precheck f * rate * mean_service / speed_ratio.
struct ClassLoads {
    double regular = 0.0;
    double precheck = 0.0;
};
ClassLoads class_loads(double rate, double mean_service, const LaneSplitSpec& split);

/// rho = rate / (gates / mean_service): arrival rate over disposal speed.
double utilization(double rate, int gates, double mean_service);

/// Smallest total gate count whose allocation (or its +-1 reallocation at the
/// rounding boundary) gives every lane class rho < 1.
int min_stable_total_gates(double rate, double mean_service, const LaneSplitSpec& split);

/// Stationary distribution of the M/M/S birth-death chain: birth rate lambda,
/// death rate min(n, S)/mu.
struct SteadyState {
    std::vector<double> probabilities;  // P_0 .. P_N
    int truncation_level = 0;           // N
    double residual = 0.0;              // max balance-equation violation
};

/// Solves the birth-death balance recurrences by forward ratio products and
/// normalizes. The truncation level starts at S + ceil(50/(1-rho)) (or the
/// given hint if larger) and doubles until the geometric tail bound is below
/// 1e-9. Throws UnstableError when rho >= 1.
SteadyState birth_death_steady_state(double rate, double mean_service, int gates,
                                     int truncation_hint = 0);

/// Erlang-C probability that an arrival has to wait.
double erlang_c_wait_probability(double rate, double mean_service, int gates);

/// Erlang-C expected queue wait in seconds; consistent with Little's law on
/// the birth-death queue-length tail. Throws UnstableError when rho >= 1.
double erlang_c_mean_wait(double rate, double mean_service, int gates);

}  // namespace gatesim
