#pragma once
#include <stdexcept>
#include <string>

namespace riccikit {

enum class ErrorCode {
  point_outside_domain,
  metric_not_positive_definite,
  insufficient_derivative_order,
  dimension_too_small,
  zero_vector,
  critical_point,
  not_a_soliton,
  nonzero_rho,
  nonpositive_phi,
  grid_too_coarse,
  missing_fiber_chart,
  no_fibration_declared,
  level_not_regular,
  normalization_nonpositive,
  phi_nonpositive_encountered,
  step_failure,
  tail_too_short,
  unknown_name,
  invalid_params,
  empty_sample_set,
  io_error,
};

const char* error_code_name(ErrorCode c);

// Single exception type for all domain errors; tests match on code().
class GeometryError : public std::runtime_error {
public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace riccikit
