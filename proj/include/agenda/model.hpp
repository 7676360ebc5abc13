#pragma once

#include <string>
#include <vector>

#include "agenda/error.hpp"

namespace agenda {

enum class State { low, high };
enum class Signal { L, H };

inline constexpr State kStates[] = {State::low, State::high};
inline constexpr Signal kSignals[] = {Signal::L, Signal::H};

// Voters are indexed 0..N-1 in decreasing order of ideal policy.
struct ModelParams {
  int n_voters = 0;
  int quota = 0;
  double policy_cap = 0.0;
  double discount = 0.0;
  std::vector<double> precisions;
  std::vector<double> reservation_low;
  std::vector<double> reservation_high;
  double prior_high = 0.5;

  double y(int i, State w) const {
    return w == State::high ? reservation_high[i] : reservation_low[i];
  }
  // decisive voter under the current quota
  int decisive() const { return quota - 1; }
};

struct ValidationReport {
  ModelParams params;
  std::vector<std::string> warnings;
};

ValidationReport validate_params(const ModelParams& params);
// Comparative statics need strict ordering; equal neighbours throw here.
void require_strict_ordering(const ModelParams& params);

inline constexpr int kProposer = -1;

// who == kProposer or a voter index
double stage_utility(const ModelParams& params, int who, double x, State w);

struct Outcome {
  bool accepted = false;
  int period = 0;
  double policy = 0.0;

  static Outcome never() { return {}; }
  static Outcome at(int t, double p) { return {true, t, p}; }
};

double discounted_payoff(const ModelParams& params, int who, State w,
                         const Outcome& outcome);

// E[u_i^w(p) | s, mu]
double expected_utility(const ModelParams& params, int i, double p, Signal s,
                        double mu);

double reservation_policy(const ModelParams& params, int i, Signal s, double mu);

// Canonical committee used in docs and tests: N=3, q=2, M=10,
// y^l=(2,1,0.5), y^h=(3,2.8,2.2), delta=0.9, tau=0.9, mu0=0.5.
ModelParams canonical_params();

}  // namespace agenda
