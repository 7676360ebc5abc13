#pragma once

#include <cstdint>
#include <string>

namespace agenda {

struct TrialReport {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  std::int64_t applies_a = 0;  // ranking only
  std::int64_t applies_b = 0;
  double max_error = 0.0;      // pmf only
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// Pmf vs 2^N enumeration and the mode characterization, for N = 1..max_n
// with `per_size` random success vectors each.
TrialReport pb_exactness_trials(std::uint64_t seed, int max_n = 10,
                                int per_size = 1000, bool parallel = true);

// Random instances where at least one ranking conclusion applies.
TrialReport ranking_trials(std::uint64_t seed, int trials = 10000,
                           int max_n = 10, bool parallel = true);

}  // namespace agenda
