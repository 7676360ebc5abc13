#include "agenda/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agenda/beliefs.hpp"

namespace agenda {

namespace {

std::string voter_msg(const char* what, int i) {
  std::ostringstream os;
  os << what << " (voter " << i + 1 << ")";
  return os.str();
}

}  // namespace

ValidationReport validate_params(const ModelParams& p) {
  const int n = p.n_voters;
  if (n < 1) throw Error(ErrorCode::size_mismatch, "n_voters must be positive");
  if (static_cast<int>(p.precisions.size()) != n ||
      static_cast<int>(p.reservation_low.size()) != n ||
      static_cast<int>(p.reservation_high.size()) != n)
    throw Error(ErrorCode::size_mismatch,
                "per-voter vectors must have length n_voters");
  if (p.quota < 1 || p.quota > n)
    throw Error(ErrorCode::quota_out_of_range, "quota must lie in 1..N");
  if (!(p.policy_cap > 0.0) || !std::isfinite(p.policy_cap))
    throw Error(ErrorCode::cap_invalid, "policy cap must be positive");
  if (!(p.discount > 0.0 && p.discount < 1.0))
    throw Error(ErrorCode::discount_out_of_range, "discount must lie in (0,1)");
  if (!(p.prior_high > 0.0 && p.prior_high < 1.0))
    throw Error(ErrorCode::prior_out_of_range, "prior must lie in (0,1)");
  for (int i = 0; i < n; ++i) {
    const double t = p.precisions[i];
    if (!(t > 0.5 && t < 1.0))
      throw Error(ErrorCode::precision_out_of_range,
                  voter_msg("precision must lie in (1/2,1)", i));
  }
  for (int i = 0; i < n; ++i) {
    if (!(p.reservation_low[i] > 0.0 &&
          p.reservation_low[i] < p.reservation_high[i]))
      throw Error(ErrorCode::non_monotone_ideal,
                  voter_msg("need 0 < y^l < y^h", i));
  }
  ValidationReport report{p, {}};
  for (State w : kStates) {
    const char* tag = w == State::high ? "y^h" : "y^l";
    for (int i = 0; i + 1 < n; ++i) {
      const double a = p.y(i, w), b = p.y(i + 1, w);
      if (a < b) {
        std::ostringstream os;
        os << tag << " must be non-increasing in voter index (voters " << i + 1
           << "," << i + 2 << ")";
        throw Error(ErrorCode::ordering_violation, os.str());
      }
      if (a == b) {
        std::ostringstream os;
        os << "equal " << tag << " for voters " << i + 1 << " and " << i + 2;
        report.warnings.push_back(os.str());
      }
    }
  }
  if (p.reservation_high[0] > p.policy_cap)
    throw Error(ErrorCode::cap_exceeded, "y_1^h exceeds the policy cap");
  return report;
}

void require_strict_ordering(const ModelParams& p) {
  auto report = validate_params(p);
  if (!report.warnings.empty())
    throw Error(ErrorCode::ordering_violation,
                "strict ordering required: " + report.warnings.front());
}

double stage_utility(const ModelParams& params, int who, double x, State w) {
  if (x < 0.0 || x > params.policy_cap)
    throw Error(ErrorCode::policy_out_of_range, "policy outside [0, M]");
  if (who == kProposer) return x;
  const double d = 0.5 * params.y(who, w) - x;
  return -d * d;
}

double discounted_payoff(const ModelParams& params, int who, State w,
                         const Outcome& o) {
  const double u0 = stage_utility(params, who, 0.0, w);
  if (!o.accepted) return u0;
  if (o.period < 1)
    throw Error(ErrorCode::precondition, "acceptance period must be >= 1");
  const double d = std::pow(params.discount, o.period - 1);
  return (1.0 - d) * u0 + d * stage_utility(params, who, o.policy, w);
}

double expected_utility(const ModelParams& params, int i, double p, Signal s,
                        double mu) {
  const double mh = signal_posterior(mu, s, params.precisions[i]);
  return mh * stage_utility(params, i, p, State::high) +
         (1.0 - mh) * stage_utility(params, i, p, State::low);
}

double reservation_policy(const ModelParams& params, int i, Signal s,
                          double mu) {
  // E[-(y/2-p)^2] >= E[-(y/2)^2]  <=>  p <= E[y]
  const double mh = signal_posterior(mu, s, params.precisions[i]);
  const double ey =
      mh * params.reservation_high[i] + (1.0 - mh) * params.reservation_low[i];
  return std::min(ey, params.policy_cap);
}

ModelParams canonical_params() {
  ModelParams p;
  p.n_voters = 3;
  p.quota = 2;
  p.policy_cap = 10.0;
  p.discount = 0.9;
  p.precisions = {0.9, 0.9, 0.9};
  p.reservation_low = {2.0, 1.0, 0.5};
  p.reservation_high = {3.0, 2.8, 2.2};
  p.prior_high = 0.5;
  return p;
}

}  // namespace agenda
