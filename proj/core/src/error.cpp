#include "radon/error.hpp"

namespace radon {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::syntax: return "SyntaxError";
    case ErrorCode::unsupported_kind: return "UnsupportedKind";
    case ErrorCode::invalid_geometry: return "InvalidGeometry";
    case ErrorCode::numerical_degeneracy: return "NumericalDegeneracy";
    case ErrorCode::invalid_mask: return "InvalidMask";
    case ErrorCode::unsupported_relation: return "UnsupportedRelation";
    case ErrorCode::empty_dataset: return "EmptyDataset";
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::io: return "IoError";
    case ErrorCode::run_failure: return "RunFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace radon
