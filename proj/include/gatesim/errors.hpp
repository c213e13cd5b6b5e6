#pragma once

#include <stdexcept>
#include <string>

namespace gatesim {

/// Bad scenario/policy input; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested a steady-state quantity for an overloaded system (rho >= 1).
class UnstableError : public std::domain_error {
public:
    explicit UnstableError(const std::string& msg) : std::domain_error(msg) {}
};

/// No gate count in the sweep satisfies the recommendation policy.
class NoFeasibleGateCount : public std::runtime_error {
public:
    explicit NoFeasibleGateCount(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gatesim
