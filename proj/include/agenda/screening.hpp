#pragma once

#include <array>
#include <memory>
#include <vector>

#include "agenda/game_engine.hpp"
#include "agenda/model.hpp"
#include "agenda/strategy.hpp"

namespace agenda {

struct ScreeningOptions {
  int max_steps = 2000;
  double tol = 1e-9;
  EngineOptions engine{};
};

struct ScreeningLadder;  // belief cutoffs plus cached continuations

// On-path objects of the screening construction. Policies are listed
// bottom-up: p_1 is the no-screening offer, p_T is the opening offer.
// For t < T, p_t is offered at belief M_t; p_T is offered at the prior.
struct ScreeningPath {
  int informed = 0;
  double prior = 0.5;
  std::vector<double> policies;      // p_1..p_T
  std::vector<double> cutoffs;       // M_1..M_T, M_T >= prior
  std::vector<double> accept_probs;  // phi_1 = 1, phi_t on path
  std::vector<double> beliefs;       // on-path belief when p_t is offered
  std::shared_ptr<const ScreeningLadder> ladder;

  int length() const { return static_cast<int>(policies.size()); }
};

// Solves M = mu(1 - tau phi) / (mu(1 - tau phi) + (1-mu)(1 - (1-tau) phi)).
double acceptance_prob(double mu, double m_prev, double tau);

// Offer accepted by both signal types at belief mu: min(p_i^{L,mu}, p_q^{L,mu}).
double no_screening_policy(const ModelParams& params, int informed, double mu);

ScreeningPath screening_sequence(const ModelParams& params, int informed,
                                 double prior,
                                 const ScreeningOptions& opts = {});

StrategyProfile build_screening_profile(const ModelParams& params,
                                        const ScreeningPath& path);

// mu max{y_q^l, min{y_q^h, y_i^h - y_q^l}} + (1-mu) y_q^l
double screening_limit_value(const ModelParams& params, int informed, double mu);

struct ScreeningCheck {
  double max_indifference = 0.0;  // |U(p_t;H) - (1-d)U(0;H) - d V|
  double max_bayes = 0.0;         // |posterior after rejecting p_t - M_{t-1}|
  double max_deviation = -1e300;  // best single-step gain of the informed voter
  double exact_value = 0.0;       // V_A from the engine at the prior
};

ScreeningCheck check_screening_path(const ModelParams& params,
                                    const ScreeningPath& path,
                                    const EngineOptions& opts = {});

}  // namespace agenda
