#pragma once

#include <stdexcept>
#include <string>

namespace cilb {

// Argument outside the mathematical domain of a function (bad shape
// parameter, probability outside [0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative method ran out of iterations or could not meet its
// residual target.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Estimate requested for data that does not define it (MLE at n = 0).
class UndefinedEstimateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Mean/variance pair that no Beta distribution can have.
class InfeasibleMomentsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Not enough usable observations left to fit anything.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyRelationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input file or specification string.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cilb
