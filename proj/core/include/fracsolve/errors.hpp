#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracsolve {

/// Base class of every error thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data: broken node monotonicity, size mismatches, non-finite samples.
class validation_error : public error {
public:
    using error::error;
};

/// Argument outside the mathematical domain of an operation (order, horizon, membership).
class domain_error : public error {
public:
    using error::error;
};

/// A user-supplied function or expression produced a non-finite value.
class evaluation_error : public error {
public:
    using error::error;
};

/// Input data admits no solution in the continuous class (e.g. first-kind data with f(0) != 0).
class consistency_error : public error {
public:
    using error::error;
};

/// A nonlocal denominator collapsed below the representable floor.
class singularity_error : public error {
public:
    using error::error;
};

/// An empirical spot check contradicted a user-asserted hypothesis constant.
class hypothesis_error : public error {
public:
    using error::error;
};

/// A series or estimate failed to reach the requested accuracy.
class accuracy_error : public error {
public:
    using error::error;
};

/// Fixed-point iteration grew for several consecutive sweeps; carries the
/// successive-difference trace accumulated up to the point of failure.
class divergence_error : public error {
public:
    divergence_error(const std::string& what, std::vector<double> trace)
        : error(what), trace_(std::move(trace)) {}

    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

}  // namespace fracsolve
