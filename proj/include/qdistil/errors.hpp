#pragma once

#include <stdexcept>
#include <string>

namespace qdistil {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values: out-of-range parameters, bad indices, bad shapes.
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

// Register would exceed the configured qubit cap.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

// A mathematical contract was violated (e.g. a Kraus set that is not
// trace preserving, or a filter with operator norm above one).
class ContractViolationError : public Error {
public:
    explicit ContractViolationError(const std::string& what) : Error(what) {}
};

// The requested W-state trajectory cannot reach the target fidelity at
// these parameters. Carries the minimum filter strength that would work.
class NotDistillableError : public Error {
public:
    NotDistillableError(const std::string& what, double threshold)
        : Error(what), threshold_(threshold) {}
    double threshold() const { return threshold_; }

private:
    double threshold_;
};

// The efficiency ratio has no defined value because the unfiltered
// reference protocol does not converge (d >= 1/(N+1)).
class RatioUndefinedError : public Error {
public:
    explicit RatioUndefinedError(const std::string& what) : Error(what) {}
};

// A numerical routine failed to reach its tolerance.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

// Bad sweep/CLI configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace qdistil
