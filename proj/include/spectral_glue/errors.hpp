#pragma once

#include <stdexcept>
#include <string>

namespace spectral_glue {

enum class ErrorCode {
  unbounded_transform,
  no_extension,
  not_unitary,
  degenerate_domain,
  step_too_large,
  unbounded_domain,
  eig_failure,
  winding_mismatch,
  incompatible_rank,
  continuous_dual,
  not_a_tiling,
  boundary_point,
  not_full_rank,
  invalid_input,
};

const char* to_string(ErrorCode code);

// All library failures carry a code so front ends can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unbounded_transform: return "UnboundedTransform";
    case ErrorCode::no_extension: return "NoExtension";
    case ErrorCode::not_unitary: return "NotUnitary";
    case ErrorCode::degenerate_domain: return "DegenerateDomain";
    case ErrorCode::step_too_large: return "StepTooLarge";
    case ErrorCode::unbounded_domain: return "UnboundedDomain";
    case ErrorCode::eig_failure: return "EigFailure";
    case ErrorCode::winding_mismatch: return "WindingMismatch";
    case ErrorCode::incompatible_rank: return "IncompatibleRank";
    case ErrorCode::continuous_dual: return "ContinuousDual";
    case ErrorCode::not_a_tiling: return "NotATiling";
    case ErrorCode::boundary_point: return "BoundaryPoint";
    case ErrorCode::not_full_rank: return "NotFullRank";
    case ErrorCode::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace spectral_glue
