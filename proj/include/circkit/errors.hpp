#pragma once

#include <stdexcept>
#include <string>

namespace circkit {

/// Base class of every error raised by the toolkit. `code()` is the stable
/// machine-readable name reported by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define CIRCKIT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

// core algebra
CIRCKIT_DEFINE_ERROR(FieldMismatch)
CIRCKIT_DEFINE_ERROR(DivisionByZero)
CIRCKIT_DEFINE_ERROR(VariableMismatch)
CIRCKIT_DEFINE_ERROR(UnknownVariable)
CIRCKIT_DEFINE_ERROR(SyntaxError)

// circuits
CIRCKIT_DEFINE_ERROR(DanglingReference)
CIRCKIT_DEFINE_ERROR(CycleDetected)
CIRCKIT_DEFINE_ERROR(InvalidCircuit)
CIRCKIT_DEFINE_ERROR(MissingVariable)
CIRCKIT_DEFINE_ERROR(BudgetExceeded)
CIRCKIT_DEFINE_ERROR(FaninTooLarge)
CIRCKIT_DEFINE_ERROR(MultipleOutputs)

// normalizer
CIRCKIT_DEFINE_ERROR(NotBinarized)
CIRCKIT_DEFINE_ERROR(NotHomogeneousOutputs)
CIRCKIT_DEFINE_ERROR(DegreeZeroOutput)

// universal graph
CIRCKIT_DEFINE_ERROR(ParamViolation)
CIRCKIT_DEFINE_ERROR(CapacityExceeded)
CIRCKIT_DEFINE_ERROR(NotNormalForm)
CIRCKIT_DEFINE_ERROR(UnknownEdgeId)

// families
CIRCKIT_DEFINE_ERROR(NotHomogeneousInZ)
CIRCKIT_DEFINE_ERROR(DegreeNotOneInX)
CIRCKIT_DEFINE_ERROR(DimensionMismatch)

// elusiveness
CIRCKIT_DEFINE_ERROR(UnsupportedField)
CIRCKIT_DEFINE_ERROR(DomainViolation)
CIRCKIT_DEFINE_ERROR(NotCertified)
CIRCKIT_DEFINE_ERROR(WrongDegreeParameter)

// cli
CIRCKIT_DEFINE_ERROR(UsageError)

#undef CIRCKIT_DEFINE_ERROR

}  // namespace circkit
