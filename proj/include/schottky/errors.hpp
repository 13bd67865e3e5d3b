#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

/// Base of every domain error raised by the library. `code()` is the stable
/// machine-readable name used in structured CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define SCHOTTKY_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  };

// mobius
SCHOTTKY_DEFINE_ERROR(IllConditioned)
SCHOTTKY_DEFINE_ERROR(NotLoxodromic)
SCHOTTKY_DEFINE_ERROR(DegenerateTriple)
// schottky
SCHOTTKY_DEFINE_ERROR(DegenerateMarking)
SCHOTTKY_DEFINE_ERROR(ExplosionGuard)
SCHOTTKY_DEFINE_ERROR(PreconditionFailed)
// enumeration
SCHOTTKY_DEFINE_ERROR(NotExtended)
SCHOTTKY_DEFINE_ERROR(NegativeRank)
SCHOTTKY_DEFINE_ERROR(BoundExceeded)
// freegroup
SCHOTTKY_DEFINE_ERROR(RankMismatch)
SCHOTTKY_DEFINE_ERROR(NotInvertibleMatrix)
SCHOTTKY_DEFINE_ERROR(NotAutomorphism)
SCHOTTKY_DEFINE_ERROR(InvalidSignature)
// realstructures
SCHOTTKY_DEFINE_ERROR(SingularDifference)
SCHOTTKY_DEFINE_ERROR(ClassificationInconclusive)
// io
SCHOTTKY_DEFINE_ERROR(ParseError)

#undef SCHOTTKY_DEFINE_ERROR

}  // namespace schottky
