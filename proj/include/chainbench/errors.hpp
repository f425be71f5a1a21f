#pragma once

#include <stdexcept>
#include <string>

namespace chainbench {

// A learner tried to read a loss its feedback model does not reveal.
class ForbiddenQuery : public std::runtime_error {
public:
    explicit ForbiddenQuery(const std::string& what) : std::runtime_error(what) {}
};

// An estimator needed the anchor loss of an effective action set whose
// maximum lies below the played action. Indicates a logic bug in the caller.
class AnchorUnobservable : public std::logic_error {
public:
    explicit AnchorUnobservable(const std::string& what) : std::logic_error(what) {}
};

class InvalidBids : public std::invalid_argument {
public:
    explicit InvalidBids(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidSpec : public std::invalid_argument {
public:
    explicit InvalidSpec(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidHorizon : public std::invalid_argument {
public:
    explicit InvalidHorizon(const std::string& what) : std::invalid_argument(what) {}
};

// Greedy net construction failed to reach the requested cover radius,
// or a built tree violated its geometric guarantees.
class CoverTooCoarse : public std::runtime_error {
public:
    explicit CoverTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

// The exact comparator search space exceeds the configured budget.
class ComparatorTooLarge : public std::runtime_error {
public:
    explicit ComparatorTooLarge(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chainbench
