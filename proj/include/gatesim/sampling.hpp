#pragma once

#include <vector>

#include "gatesim/rng.hpp"

namespace gatesim {

enum class ServiceKind { constant, gaussian_truncated, exponential };

/// Per-passenger check-time law. mean/std are in seconds; std is ignored for
/// the constant and exponential kinds.
struct ServiceLaw {
    ServiceKind kind = ServiceKind::gaussian_truncated;
    double mean = 39.02;
    double std = 13.844854639827069;  // sqrt(191.68)

    /// Law with both scale parameters divided by k (used for the Pre-Check
    /// lane, which keeps the coefficient of variation of the regular lane).
    ServiceLaw scaled_down(double k) const { return {kind, mean / k, std / k}; }
};

struct ArrivalLaw {
    double rate = 0.81333;    // passengers per second
    double horizon = 64800.0; // seconds
};

enum class LaneClass { regular = 0, precheck = 1 };

void validate(const ServiceLaw& law);
void validate(const ArrivalLaw& law);

/// Strictly increasing event timestamps of a Poisson process with the given
/// rate over [0, horizon), generated by cumulative exponential inter-arrival
/// gaps. rate = 0 yields the empty list.
std::vector<double> poisson_arrival_times(const ArrivalLaw& law, RngStream& rng);

/// One service duration, always > 0. The gaussian_truncated kind draws from
/// N(mean, std^2) restricted to (0, inf) by acceptance-rejection: uniform
/// proposals over [max(0, mean-6*std), mean+6*std] against the Gaussian
/// density (the window loses < 1e-8 of the positive mass).
double sample_service_time(const ServiceLaw& law, RngStream& rng);

/// Pre-Check with probability precheck_fraction, independently per passenger.
LaneClass classify_lane(double precheck_fraction, RngStream& rng);

}  // namespace gatesim
