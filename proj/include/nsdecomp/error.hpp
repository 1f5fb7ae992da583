#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsdecomp {

enum class Errc {
  GcdNotOne,
  TrivialSemigroup,
  InvalidGenerators,
  InvalidKunz,
  DimensionMismatch,
  MultiplicityMismatch,
  EmptyInput,
  IndexOutOfRange,
  NotSpecialGap,
  WrongRegime,
  NotUndercoordinate,
  Uncoverable,
  EmptySpecialGaps,
  MalformedModel,
  SolverLimit,
  NotSymmetricallyDecomposable,
  OracleTooLarge,
  MissingCandidates,
  ParseError,
  InvalidConfig,
  BucketExhausted,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nsdecomp
