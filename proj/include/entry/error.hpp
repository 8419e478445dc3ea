#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entry {

enum class ErrorKind {
  invalid_argument,
  invalid_dispersion,
  nonpositive_radius,
  polar_singularity,
  g0_singular,
  overflow,
  nonfinite_control,
  nonfinite_state,
  timeout,
  nominal_run_failed,
  insufficient_samples,
  empty_input,
  quadrature_failure,
  misaligned_histories,
  invalid_config,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_dispersion: return "invalid-dispersion";
    case ErrorKind::nonpositive_radius: return "nonpositive-radius";
    case ErrorKind::polar_singularity: return "polar-singularity";
    case ErrorKind::g0_singular: return "g0-singular";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::nonfinite_control: return "nonfinite-control";
    case ErrorKind::nonfinite_state: return "nonfinite-state";
    case ErrorKind::timeout: return "timeout";
    case ErrorKind::nominal_run_failed: return "nominal-run-failed";
    case ErrorKind::insufficient_samples: return "insufficient-samples";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::quadrature_failure: return "quadrature-failure";
    case ErrorKind::misaligned_histories: return "misaligned-histories";
    case ErrorKind::invalid_config: return "invalid-config";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entry
