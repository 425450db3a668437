#pragma once

#include <stdexcept>
#include <string>

namespace ffp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FFP_DEFINE_ERROR(Name)            \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

FFP_DEFINE_ERROR(NonConvergence);
FFP_DEFINE_ERROR(InvalidConstantTerm);
FFP_DEFINE_ERROR(NotInvertible);
FFP_DEFINE_ERROR(DegreeExceeded);
FFP_DEFINE_ERROR(DegreeMismatch);
FFP_DEFINE_ERROR(DimensionMismatch);
FFP_DEFINE_ERROR(LengthMismatch);
FFP_DEFINE_ERROR(IndexOutOfRange);
FFP_DEFINE_ERROR(QuadratureFailure);
FFP_DEFINE_ERROR(NonPositiveRoots);
FFP_DEFINE_ERROR(NonIntegerLambdaM);
FFP_DEFINE_ERROR(HypothesisViolated);
FFP_DEFINE_ERROR(BudgetExceeded);
FFP_DEFINE_ERROR(NotSymmetric);

#undef FFP_DEFINE_ERROR

}  // namespace ffp
