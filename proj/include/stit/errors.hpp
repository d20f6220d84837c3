// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace stit {

/// Base of every error thrown by the library. `kind()` is the stable name
/// that the CLI and the Python bindings report.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define STIT_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

STIT_DEFINE_ERROR(InvalidArgument);
STIT_DEFINE_ERROR(DegenerateCut);
STIT_DEFINE_ERROR(NonPositiveScale);
STIT_DEFINE_ERROR(RegimeMismatch);
STIT_DEFINE_ERROR(SamplerStall);
STIT_DEFINE_ERROR(ExplosionGuard);
STIT_DEFINE_ERROR(OutOfRange);
STIT_DEFINE_ERROR(AmbiguousZeroCell);
STIT_DEFINE_ERROR(MethodMismatch);
STIT_DEFINE_ERROR(InsufficientNests);
STIT_DEFINE_ERROR(WindowMismatch);
STIT_DEFINE_ERROR(UnsupportedSupport);
STIT_DEFINE_ERROR(InsufficientSamples);
STIT_DEFINE_ERROR(TooFewConditioned);
STIT_DEFINE_ERROR(ConfigError);

#undef STIT_DEFINE_ERROR

}  // namespace stit
