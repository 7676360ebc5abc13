#include "agenda/error.hpp"

namespace agenda {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::size_mismatch: return "size_mismatch";
    case ErrorCode::quota_out_of_range: return "quota_out_of_range";
    case ErrorCode::cap_invalid: return "cap_invalid";
    case ErrorCode::discount_out_of_range: return "discount_out_of_range";
    case ErrorCode::precision_out_of_range: return "precision_out_of_range";
    case ErrorCode::prior_out_of_range: return "prior_out_of_range";
    case ErrorCode::non_monotone_ideal: return "non_monotone_ideal";
    case ErrorCode::ordering_violation: return "ordering_violation";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::policy_out_of_range: return "policy_out_of_range";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::regime: return "regime";
    case ErrorCode::bracket_failure: return "bracket_failure";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::undefined_belief: return "undefined_belief";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace agenda
