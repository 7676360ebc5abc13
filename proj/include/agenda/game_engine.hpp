#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "agenda/model.hpp"
#include "agenda/strategy.hpp"

namespace agenda {

struct OutcomeAtom {
  int period = 1;
  double policy = 0.0;
  double prob = 0.0;
};

// Law of (acceptance period, policy) plus the unresolved mass.
struct OutcomeDistribution {
  std::vector<OutcomeAtom> atoms;  // sorted by (period, policy)
  double never_prob = 0.0;
  int periods = 0;  // periods actually enumerated

  double total() const;
  double accept_prob() const { return total() - never_prob; }
};

struct EngineOptions {
  int max_periods = 200;
  double residual_tol = 1e-10;
};

OutcomeDistribution induced_distribution(const ModelParams& params,
                                         const StrategyProfile& profile,
                                         double mu, State w,
                                         const EngineOptions& opts = {});

// H(p): mass on policies strictly above p
double tail_prob(const OutcomeDistribution& dist, double p);

// Expected discounted payoff of `who` in state w when play starts now.
double state_payoff(const ModelParams& params, int who, State w,
                    const OutcomeDistribution& dist);

struct Payoffs {
  double proposer = 0.0;
  // voter[i][0] for signal L, voter[i][1] for signal H
  std::vector<std::array<double, 2>> voter;
  // |truncation error| of the proposer value is at most this
  double truncation_bound = 0.0;
};

Payoffs expected_payoffs(const ModelParams& params,
                         const OutcomeDistribution& g_low,
                         const OutcomeDistribution& g_high, double mu);

Payoffs evaluate_profile(const ModelParams& params,
                         const StrategyProfile& profile, double mu,
                         const EngineOptions& opts = {});

struct VoteValues {
  double reject = 0.0;
  double accept = 0.0;
  double prescribed_accept_prob = 0.0;
  double prescribed() const {
    return prescribed_accept_prob * accept +
           (1.0 - prescribed_accept_prob) * reject;
  }
};

// Exact expected payoff of voter i (signal s, public belief mu, proposal p)
// from each vote, others following the profile and beliefs updating as the
// profile prescribes. Continuations come from induced_distribution.
VoteValues vote_values(const ModelParams& params,
                       const StrategyProfile& profile, int voter, Signal s,
                       double mu, double p, const EngineOptions& opts = {});

// Gain of the pure action `accept` over the prescribed (possibly mixed) vote.
double deviation_gain(const ModelParams& params,
                      const StrategyProfile& profile, int voter, Signal s,
                      double mu, double p, bool accept,
                      const EngineOptions& opts = {});

struct SimulationOptions {
  std::uint64_t seed = 0;
  std::int64_t episodes = 10000;
  int max_periods = 200;
  bool parallel = true;
};

struct OutcomeCell {
  State state = State::low;
  int period = 0;  // 0 = not accepted within max_periods
  double policy = 0.0;
  double frequency = 0.0;
};

struct SimulationResult {
  std::int64_t episodes = 0;
  double proposer_mean = 0.0;
  double proposer_se = 0.0;
  // conditioned on voter i's first-period signal
  std::vector<std::array<double, 2>> voter_mean;
  std::vector<std::array<double, 2>> voter_se;
  std::vector<std::array<std::int64_t, 2>> voter_count;
  std::vector<OutcomeCell> cells;
};

SimulationResult simulate(const ModelParams& params,
                          const StrategyProfile& profile,
                          const SimulationOptions& opts);

std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t episode);

}  // namespace agenda
