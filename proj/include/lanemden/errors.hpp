#pragma once

#include <stdexcept>
#include <string>

namespace lanemden {

/// Invalid input: off-hyperbola exponents, excluded cases, bad arguments.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base class for failures of a numerical method on valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LANEMDEN_NUMERICAL_ERROR(Name)                                \
  class Name : public NumericalError {                                \
   public:                                                            \
    explicit Name(const std::string& what) : NumericalError(#Name ": " + what) {} \
  };

LANEMDEN_NUMERICAL_ERROR(StepFailure)
LANEMDEN_NUMERICAL_ERROR(BracketingFailure)
LANEMDEN_NUMERICAL_ERROR(MonotonicityViolation)
LANEMDEN_NUMERICAL_ERROR(WindowTooNarrow)
LANEMDEN_NUMERICAL_ERROR(PoorFit)
LANEMDEN_NUMERICAL_ERROR(QuadratureNonConvergent)
LANEMDEN_NUMERICAL_ERROR(QuadratureAsymmetry)
LANEMDEN_NUMERICAL_ERROR(TailDivergent)

#undef LANEMDEN_NUMERICAL_ERROR

}  // namespace lanemden
