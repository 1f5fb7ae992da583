#include "nsdecomp/error.hpp"

namespace nsdecomp {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::GcdNotOne: return "GcdNotOne";
    case Errc::TrivialSemigroup: return "TrivialSemigroup";
    case Errc::InvalidGenerators: return "InvalidGenerators";
    case Errc::InvalidKunz: return "InvalidKunz";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::MultiplicityMismatch: return "MultiplicityMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotSpecialGap: return "NotSpecialGap";
    case Errc::WrongRegime: return "WrongRegime";
    case Errc::NotUndercoordinate: return "NotUndercoordinate";
    case Errc::Uncoverable: return "Uncoverable";
    case Errc::EmptySpecialGaps: return "EmptySpecialGaps";
    case Errc::MalformedModel: return "MalformedModel";
    case Errc::SolverLimit: return "SolverLimit";
    case Errc::NotSymmetricallyDecomposable: return "NotSymmetricallyDecomposable";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::MissingCandidates: return "MissingCandidates";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::BucketExhausted: return "BucketExhausted";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace nsdecomp
