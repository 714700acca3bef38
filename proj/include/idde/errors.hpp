#pragma once

#include <stdexcept>
#include <string>

namespace idde {

/// Query outside the stored record; the message names the valid interval.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed construction: non-contiguous append, non-monotone times, ...
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid numeric parameter (non-positive step, delta <= 0, kappa >= 1, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A flow or jump map queried the delayed-state view beyond the declared
/// lookback, or asked for data the current step has not produced yet.
class DelayBoundError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Operation invoked outside its contract, e.g. a one-sided derivative
/// estimate across an impulse time.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// State norm exceeded the divergence guard during integration.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, double t)
        : std::runtime_error(msg), time_reached(t) {}

    double time_reached;
};

/// Invalid run configuration (bad JSON, unknown keys, missing fields).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace idde
