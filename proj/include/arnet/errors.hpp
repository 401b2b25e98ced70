#pragma once

#include <stdexcept>
#include <string>

namespace arnet {

// Base class for all library errors. `name()` is the stable identifier a
// caller (or the CLI) can match on; what() carries "Name: detail".
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& message)
      : std::runtime_error(name + ": " + message), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define ARNET_ERROR_TYPE(NAME)                        \
  class NAME : public Error {                         \
   public:                                            \
    explicit NAME(const std::string& message)         \
        : Error(#NAME, message) {}                    \
  };

ARNET_ERROR_TYPE(AsymmetricInput)
ARNET_ERROR_TYPE(MalformedFile)
ARNET_ERROR_TYPE(NonFiniteWeight)
ARNET_ERROR_TYPE(NegativeWeight)
ARNET_ERROR_TYPE(NumericalFailure)
ARNET_ERROR_TYPE(LengthMismatch)
ARNET_ERROR_TYPE(RankOutOfRange)
ARNET_ERROR_TYPE(ZeroNetwork)
ARNET_ERROR_TYPE(IndexOutOfRange)
ARNET_ERROR_TYPE(EmptyRepelSpace)
ARNET_ERROR_TYPE(AllZeroSpectrum)
ARNET_ERROR_TYPE(FoldTooLarge)
ARNET_ERROR_TYPE(DegenerateBlock)
ARNET_ERROR_TYPE(ProbabilityOutOfRange)
ARNET_ERROR_TYPE(NonPositiveDiagonal)
ARNET_ERROR_TYPE(UnknownNode)

#undef ARNET_ERROR_TYPE

}  // namespace arnet
