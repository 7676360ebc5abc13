#pragma once

#include <vector>

#include "agenda/model.hpp"

namespace agenda {

enum class RegimeKind { full_extraction, partial_screening, coase };
const char* to_string(RegimeKind k);

struct Regime {
  RegimeKind kind = RegimeKind::coase;
  int informed = 0;
  double limit_policy = 0.0;  // p**: policy implemented in state h in the limit
  bool boundary = false;      // y_i^h - y_q^l sits exactly on a threshold
};

Regime classify_regime(const ModelParams& params, int informed);

// y_q^l + mu (p** - y_q^l)
double setter_limit_value(const ModelParams& params, const Regime& regime,
                          double mu);

// y_q^l + max{0, mu y_q^h - y_q^l}
double tioli_limit(const ModelParams& params, double mu);

struct QuotaComparison {
  double value_q = 0.0;
  double value_qt = 0.0;
  int better = 0;  // -1: q, +1: q~, 0: tie
  bool threshold_defined = true;
  double threshold = 0.0;
  bool boundary = false;
  bool consistent = true;  // direct comparison agrees with the threshold test
};

// q and qt are quotas (1-based counts) with q < qt; informed is a voter index.
QuotaComparison quota_comparison(const ModelParams& params, int q, int qt,
                                 int informed, double mu);

enum class Verdict { valuable, harmful, equal };
const char* to_string(Verdict v);

enum class PrecisionCase { informed_voter, equal_precision };

struct RevisionComparison {
  double with_revisions = 0.0;
  double take_it_or_leave_it = 0.0;
  Verdict verdict = Verdict::equal;
  bool has_threshold = false;
  double threshold = 0.0;  // belief where the verdict flips
};

RevisionComparison revision_value(const ModelParams& params, int informed,
                                  double mu,
                                  PrecisionCase pc = PrecisionCase::informed_voter);

// One point of the (y_i^h, mu) region map: limit values with and without
// revisions, plus independent checks of the classification.
struct RegionPoint {
  double informed_high = 0.0;  // y_i^h
  double mu = 0.0;
  Regime regime;
  double with_revisions = 0.0;
  double take_it_or_leave_it = 0.0;
  Verdict verdict = Verdict::equal;
  bool consistent = true;
};

// Grid over y_i^h in [lo, hi] (n_y points) and mu in [0, 1] (n_mu points).
// Pure formula evaluation, so ordering of the other voters is not enforced.
std::vector<RegionPoint> region_sweep(const ModelParams& params, int informed,
                                      double yh_lo, double yh_hi, int n_y,
                                      int n_mu, bool parallel = true);

}  // namespace agenda
