#ifndef HAHNFIT_ERRORS_HPP
#define HAHNFIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hahnfit
{

/// Argument outside the mathematical domain of an operation (pole, out-of-range abscissa, ...).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Parameters outside the family the operation is defined for (e.g. alpha != beta).
class UnsupportedParameters : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested degree exceeds the finite Hahn family or the sampling grid.
class FamilyExhausted : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

class DegenerateRecurrence : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Sampled data does not match the grid it is used with.
class ShapeError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Degree above n(alpha, N) requested in strict mode.
class AdmissibilityError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class ConditioningError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace hahnfit

#endif // HAHNFIT_ERRORS_HPP
