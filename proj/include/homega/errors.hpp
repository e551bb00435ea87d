#pragma once

#include <stdexcept>
#include <string>

namespace homega {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A weight descriptor is malformed (nonpositive entry, bad parameter, ...).
class InvalidWeight : public Error {
public:
    using Error::Error;
};

/// The regularity gate on consecutive weight ratios failed inside the
/// checked tail window. Carries the first offending index.
class WeightConditionViolation : public Error {
public:
    WeightConditionViolation(const std::string& msg, long index)
        : Error(msg + " (index " + std::to_string(index) + ")"), index_(index) {}
    long index() const noexcept { return index_; }

private:
    long index_;
};

/// Two series that live in different weighted spaces were combined.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// An operation that requires a nonzero vector received the zero function.
class ZeroVector : public Error {
public:
    using Error::Error;
};

/// A point outside the admissible region of the unit disk was requested.
class OutsideDomain : public Error {
public:
    using Error::Error;
};

/// A zero prescription, budget or JSON payload fails validation.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// A Gram system is numerically singular or too ill-conditioned to solve.
/// Carries the condition and determinant estimates for diagnostics.
class IllConditionedGram : public Error {
public:
    IllConditionedGram(const std::string& msg, double condition, double det_estimate)
        : Error(msg + " (condition ~" + std::to_string(condition) +
                ", det ~" + std::to_string(det_estimate) + ")"),
          condition_(condition),
          det_(det_estimate) {}
    double condition() const noexcept { return condition_; }
    double det_estimate() const noexcept { return det_; }

private:
    double condition_;
    double det_;
};

/// The cofactor-expansion path is capped at small sizes; larger systems
/// must go through the normal-equation projection instead.
class UseProjectionPath : public Error {
public:
    using Error::Error;
};

} // namespace homega
