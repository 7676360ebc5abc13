#pragma once

#include <functional>
#include <vector>

#include "agenda/model.hpp"

namespace agenda {

struct ProposalAtom {
  double policy = 0.0;
  double prob = 1.0;
};

// Stationary Markov rules: history enters only through the public belief.
using ProposalRule = std::function<std::vector<ProposalAtom>(double mu)>;
using AcceptanceRule =
    std::function<double(int voter, Signal s, double mu, double p)>;

struct StrategyProfile {
  ProposalRule proposal;
  AcceptanceRule acceptance;
};

// tau_i(s | w)
double signal_prob(const ModelParams& params, int i, Signal s, State w);

// alpha_i(p; w, mu) = sum_s tau_i(s|w) alpha_i(p; s, mu)
double composite_acceptance(const ModelParams& params,
                            const StrategyProfile& profile, int i, double p,
                            State w, double mu);

std::vector<double> composite_acceptance_all(const ModelParams& params,
                                             const StrategyProfile& profile,
                                             double p, State w, double mu);

}  // namespace agenda
