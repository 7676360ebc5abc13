#pragma once

#include <array>
#include <string>
#include <vector>

#include "agenda/model.hpp"

namespace agenda {

// mu y_q^h + (1-mu) y_q^l
double complete_info_value(const ModelParams& params, double mu);

struct TioliOptions {
  int max_iterations = 200;
  double tol = 1e-9;
  bool parallel = true;
};

// One-shot voting on p with the status quo forever after a rejection.
struct TioliEquilibrium {
  double policy = 0.0;
  std::vector<std::array<double, 2>> accept;  // [voter][L=0, H=1]
  double accept_low = 0.0;   // P(pass | l)
  double accept_high = 0.0;  // P(pass | h)
  int iterations = 0;
  bool converged = false;
  bool ranking_ok = true;
  std::vector<std::string> trace;  // rule snapshots, filled on failure
};

// Best-response iteration from sincere voting; ties go to acceptance.
TioliEquilibrium tioli_equilibrium(const ModelParams& params, double mu,
                                   double p, const TioliOptions& opts = {});

struct TioliValue {
  double proposal = 0.0;
  double value = 0.0;
  double accept_low = 0.0;
  double accept_high = 0.0;
  int candidates = 0;
};

TioliValue tioli_value(const ModelParams& params, double mu,
                       const TioliOptions& opts = {});

// max{y_q^l, mu y_q^h}
double tioli_limit_value(const ModelParams& params, double mu);

}  // namespace agenda
