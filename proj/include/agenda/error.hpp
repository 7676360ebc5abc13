#pragma once

#include <stdexcept>
#include <string>

namespace agenda {

enum class ErrorCode {
  size_mismatch,
  quota_out_of_range,
  cap_invalid,
  discount_out_of_range,
  precision_out_of_range,
  prior_out_of_range,
  non_monotone_ideal,
  ordering_violation,
  cap_exceeded,
  policy_out_of_range,
  precondition,
  regime,
  bracket_failure,
  non_convergence,
  undefined_belief,
  internal,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace agenda
