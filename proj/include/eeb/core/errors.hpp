#ifndef EEB_CORE_ERRORS_HPP
#define EEB_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eeb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A formula or operation was evaluated outside its domain of definition
/// (log argument out of range, tau off the curve, bad parameters).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed: non-finite quadrature node, bracket without a
/// sign change, iteration cap reached, heavy truncated tail.
class NumericalError : public Error {
public:
    using Error::Error;
};

class QuadratureNodeError : public NumericalError {
public:
    explicit QuadratureNodeError(double abscissa)
        : NumericalError("non-finite integrand value at abscissa " + std::to_string(abscissa)),
          abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

class TailTooHeavyError : public NumericalError {
public:
    TailTooHeavyError(double truncation, double tail_bound)
        : NumericalError("semi-infinite integral tail " + std::to_string(tail_bound) +
                         " beyond truncation " + std::to_string(truncation) + " is too heavy"),
          truncation_(truncation), tail_bound_(tail_bound) {}

    double truncation() const noexcept { return truncation_; }
    double tail_bound() const noexcept { return tail_bound_; }

private:
    double truncation_;
    double tail_bound_;
};

class NoSignChangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MaxIterationsError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace eeb

#endif
