#pragma once

#include <stdexcept>
#include <string>

namespace gaussn {

/// Caller passed something outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation is not defined for the requested model or order.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical routine did not reach its tolerance. Carries the best estimate
/// obtained so callers can decide whether it is usable.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace gaussn
