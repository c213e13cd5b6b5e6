#include "gatesim/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gatesim {

void validate(const ServiceLaw& law) {
    if (!(law.mean > 0.0))
        throw std::invalid_argument("service mean must be > 0");
    if (!(law.std >= 0.0))
        throw std::invalid_argument("service std must be >= 0");
}

void validate(const ArrivalLaw& law) {
    if (!(law.rate >= 0.0))
        throw std::invalid_argument("arrival rate must be >= 0");
    if (!(law.horizon > 0.0))
        throw std::invalid_argument("horizon must be > 0");
}

std::vector<double> poisson_arrival_times(const ArrivalLaw& law, RngStream& rng) {
    validate(law);
    std::vector<double> times;
    if (law.rate == 0.0) return times;

    const double mean_gap = 1.0 / law.rate;
    times.reserve(static_cast<std::size_t>(law.rate * law.horizon * 1.05) + 16);
    double t = 0.0;
    while (true) {
        double next = t + rng.next_exponential(mean_gap);
        if (next <= t)  // zero/underflowed gap; keep the order strict
            next = std::nextafter(t, std::numeric_limits<double>::infinity());
        if (next >= law.horizon) break;
        times.push_back(next);
        t = next;
    }
    return times;
}

namespace {

double gaussian_density(double x, double mean, double std) {
    const double z = (x - mean) / std;
    return std::exp(-0.5 * z * z) / (std * std::sqrt(2.0 * M_PI));
}

double truncated_gaussian(double mean, double std, RngStream& rng) {
    const double lo = std::max(0.0, mean - 6.0 * std);
    const double hi = mean + 6.0 * std;
    const double peak = gaussian_density(mean, mean, std);
    while (true) {
        const double x = rng.next_uniform(lo, hi);
        const double y = rng.next_uniform() * peak;
        if (y <= gaussian_density(x, mean, std) && x > 0.0) return x;
    }
}

}  // namespace

double sample_service_time(const ServiceLaw& law, RngStream& rng) {
    validate(law);
    switch (law.kind) {
    case ServiceKind::constant:
        return law.mean;
    case ServiceKind::exponential: {
        double d = rng.next_exponential(law.mean);
        return d > 0.0 ? d : std::numeric_limits<double>::min();
    }
    case ServiceKind::gaussian_truncated:
        if (law.std == 0.0) return law.mean;
        return truncated_gaussian(law.mean, law.std, rng);
    }
    throw std::invalid_argument("unknown service kind");
}

LaneClass classify_lane(double precheck_fraction, RngStream& rng) {
    if (!(precheck_fraction >= 0.0 && precheck_fraction <= 1.0))
        throw std::invalid_argument("precheck_fraction must be in [0,1]");
    return rng.next_uniform() < precheck_fraction ? LaneClass::precheck
                                                  : LaneClass::regular;
}

}  // namespace gatesim
