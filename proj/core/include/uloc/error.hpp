#pragma once

#include <stdexcept>
#include <string>

namespace uloc {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), message_(what) {}
  const std::string& kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string kind_;
  std::string message_;
};

#define ULOC_ERROR_TYPE(Name)                                        \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

ULOC_ERROR_TYPE(NotPrime)
ULOC_ERROR_TYPE(CyclicQuiver)
ULOC_ERROR_TYPE(NonEuclideanBackend)
ULOC_ERROR_TYPE(ShapeMismatch)
ULOC_ERROR_TYPE(IllDefinedMorphism)
ULOC_ERROR_TYPE(SourceMismatch)
ULOC_ERROR_TYPE(BackendMismatch)
ULOC_ERROR_TYPE(ObjectMismatch)
ULOC_ERROR_TYPE(MalformedWord)
ULOC_ERROR_TYPE(HomDimTooLarge)
ULOC_ERROR_TYPE(UnsupportedBackend)
ULOC_ERROR_TYPE(ParseError)
ULOC_ERROR_TYPE(ReferenceError)
ULOC_ERROR_TYPE(BoundViolation)
ULOC_ERROR_TYPE(VerificationFailure)

#undef ULOC_ERROR_TYPE

}  // namespace uloc
