#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace duelbench {

enum class Errc {
  not_square,
  bad_diagonal,
  asymmetric_pair,
  entry_out_of_range,
  mean_out_of_range,
  arm_out_of_range,
  step_out_of_range,
  too_few_arms,
  zero_probability,
  negative_tau,
  horizon_too_small,
  missing_checkpoint,
  grid_mismatch,
  config_invalid,
  arm_count_mismatch,
  io_error,
  invalid_argument,
};

std::string_view to_string(Errc code);

// Every library failure is reported through this type; `code()` identifies
// the failing precondition so callers and tests can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace duelbench
