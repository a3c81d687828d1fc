#pragma once

#include <stdexcept>
#include <string>

namespace lincvx {

enum class ErrorCode {
  invalid_argument,
  wrong_dimension,
  unknown_family,
  spec_parse,
  degenerate_boundary,
  sampling_failed,
  not_interior,
  invalid_direction,
  center_mismatch,
  delta_too_large,
  not_tangent,
  step_too_large,
  nothing_to_normalize,
  containment_failed,
  non_unique_nearest,
  on_boundary,
  empty_system,
  degenerate_directions,
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lincvx
