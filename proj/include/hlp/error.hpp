#pragma once

#include <stdexcept>
#include <string>

namespace hlp {

// Invalid input: bad order, bad parameters, integrability violations.
// The CLI maps these to usage errors (exit code 2).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure could not deliver a validated answer.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleProximityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SignPatternError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ClassificationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace hlp
