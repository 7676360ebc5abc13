#pragma once

#include <array>
#include <string>
#include <vector>

#include "agenda/model.hpp"
#include "agenda/strategy.hpp"

namespace agenda {

// Informative voting by the two marginal voters q-1 and q (1-based).
// Residuals are the gains from deviating; feasibility means both <= 0.
struct PoolingResiduals {
  int voter = 0;           // 0-based index
  double low_signal = 0;   // gain from accepting after L
  double high_signal = 0;  // gain from rejecting after H
  double high_direct = 0;  // mu(h) tau^2 [(1-d)u^h(0) + d V^h - u^h(p)]
};

enum class BindingConstraint { low_signal, high_signal };
const char* to_string(BindingConstraint b);

struct PoolingSolution {
  ModelParams params;  // precisions equalized
  double prior = 0.5;
  double tau = 0.5;
  double tilde_p = 0.0;
  double fallback_p = 0.0;
  double fallback_belief = 0.0;  // belief after both marginal voters reject
  // continuation[k] = {V^l, V^h} for voter q-2+k (0-based), k = 0, 1
  std::array<std::array<double, 2>, 2> continuation{};
  std::array<PoolingResiduals, 2> residuals{};
  BindingConstraint binding = BindingConstraint::high_signal;
  std::vector<std::string> warnings;
};

// Closed-form {V^l, V^h} for voter i when the pooling offer repeats after a
// split vote and the fallback is accepted after a double rejection.
std::array<double, 2> continuation_values(const ModelParams& params,
                                          double tilde_p, double fallback_p,
                                          double mu, int i);

// Both residuals for voter i at offer p.
PoolingResiduals pooling_residuals(const ModelParams& params, double p,
                                   double fallback_p, double mu, int i);

bool pooling_feasible(const ModelParams& params, double p, double fallback_p,
                      double mu, double tol = 1e-9);

// mu(1-tau)^2 / (mu(1-tau)^2 + (1-mu) tau^2)
double double_reject_belief(double mu, double tau);

PoolingSolution solve_tilde_p(const ModelParams& params, double mu);

StrategyProfile build_pooling_profile(const PoolingSolution& sol);

}  // namespace agenda
