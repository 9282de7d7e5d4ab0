// error.hpp - exception types shared by every dephase module.
#pragma once

#include <stdexcept>
#include <string>

namespace dephase {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructor or operation received parameters outside its documented domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// The operation is not defined at this argument (e.g. theta = 0 for a thermal-only routine).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A quadrature or root search exhausted its budget. Carries the best value obtained.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double partial, double error_estimate)
        : Error(what), partial_value_(partial), error_estimate_(error_estimate) {}

    double partial_value() const noexcept { return partial_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_value_;
    double error_estimate_;
};

/// The integrand is not integrable at the origin for the requested quantity.
class DivergentIntegrand : public Error {
public:
    using Error::Error;
};

/// No implemented asymptotic law covers the requested regime.
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

} // namespace dephase
