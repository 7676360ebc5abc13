#include "agenda/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agenda/beliefs.hpp"
#include "agenda/screening.hpp"

namespace agenda {

namespace {

constexpr double kEqualTau = 1e-12;
constexpr double kNearEqualTau = 1e-6;
constexpr int kScanPoints = 2000;

int low_marginal(const ModelParams& params) { return params.decisive() - 1; }

}  // namespace

const char* to_string(BindingConstraint b) {
  return b == BindingConstraint::low_signal ? "low_signal" : "high_signal";
}

double double_reject_belief(double mu, double tau) {
  const double a = mu * (1.0 - tau) * (1.0 - tau);
  const double b = (1.0 - mu) * tau * tau;
  return a / (a + b);
}

std::array<double, 2> continuation_values(const ModelParams& params,
                                          double tilde_p, double fallback_p,
                                          double, int i) {
  const double t = params.precisions[i];
  const double d = params.discount;
  const double den = 1.0 - 2.0 * (1.0 - t) * t * d;
  auto u = [&](double x, State w) { return stage_utility(params, i, x, w); };
  const double vl = ((1.0 - t) * (1.0 - t) * u(tilde_p, State::low) +
                     t * t * d * u(fallback_p, State::low) +
                     t * (2.0 - t) * (1.0 - d) * u(0.0, State::low)) /
                    den;
  const double vh = (t * t * u(tilde_p, State::high) +
                     (1.0 - t) * (1.0 - t) * d * u(fallback_p, State::high) +
                     (1.0 - t * t) * (1.0 - d) * u(0.0, State::high)) /
                    den;
  return {vl, vh};
}

PoolingResiduals pooling_residuals(const ModelParams& params, double p,
                                   double fallback_p, double mu, int i) {
  const double t = params.precisions[i];
  const double d = params.discount;
  const auto v = continuation_values(params, p, fallback_p, mu, i);
  auto u = [&](double x, State w) { return stage_utility(params, i, x, w); };
  const double ml = 1.0 - mu, mh = mu;
  const double vl = v[0], vh = v[1];
  const double ul0 = u(0.0, State::low), uh0 = u(0.0, State::high);
  const double ulf = u(fallback_p, State::low), uhf = u(fallback_p, State::high);
  const double ulp = u(p, State::low), uhp = u(p, State::high);

  PoolingResiduals r;
  r.voter = i;
  r.low_signal = ml * t * t * (d * vl - d * ulf) +
                 ml * t * (1.0 - t) * (ulp - (1.0 - d) * ul0 - d * vl) +
                 mh * (1.0 - t) * (1.0 - t) * (d * vh - d * uhf) +
                 mh * (1.0 - t) * t * (uhp - (1.0 - d) * uh0 - d * vh);
  r.high_direct = mh * t * t * ((1.0 - d) * uh0 + d * vh - uhp);
  // state l, own H: the partner holds L w.p. tau (double rejection if we
  // reject) and H w.p. 1-tau (split if we reject)
  r.high_signal = ml * (1.0 - t) * t * (d * ulf - d * vl) +
                  ml * (1.0 - t) * (1.0 - t) * ((1.0 - d) * ul0 + d * vl - ulp) +
                  mh * t * (1.0 - t) * (d * uhf - d * vh) + r.high_direct;
  return r;
}

bool pooling_feasible(const ModelParams& params, double p, double fallback_p,
                      double mu, double tol) {
  const int lo = low_marginal(params);
  for (int i : {lo, lo + 1}) {
    const auto r = pooling_residuals(params, p, fallback_p, mu, i);
    if (r.low_signal > tol || r.high_signal > tol) return false;
  }
  return true;
}

PoolingSolution solve_tilde_p(const ModelParams& raw, double mu) {
  const ModelParams params = validate_params(raw).params;
  if (params.quota < 2)
    throw Error(ErrorCode::precondition, "pooling construction needs q >= 2");
  if (!(mu > 0.0 && mu < 1.0))
    throw Error(ErrorCode::prior_out_of_range, "belief must lie in (0,1)");

  PoolingSolution sol;
  const auto [tmin, tmax] =
      std::minmax_element(params.precisions.begin(), params.precisions.end());
  const double spread = *tmax - *tmin;
  if (spread >= kNearEqualTau)
    throw Error(ErrorCode::precondition,
                "pooling construction needs equal precisions");
  double tau = *tmin;
  if (spread >= kEqualTau) {
    double s = 0.0;
    for (double t : params.precisions) s += t;
    tau = s / params.n_voters;
    std::ostringstream os;
    os << "precisions differ by " << spread << "; using mean " << tau;
    sol.warnings.push_back(os.str());
  }
  sol.params = params;
  std::fill(sol.params.precisions.begin(), sol.params.precisions.end(), tau);
  sol.prior = mu;
  sol.tau = tau;
  sol.fallback_belief = double_reject_belief(mu, tau);
  sol.fallback_p =
      no_screening_policy(sol.params, sol.params.decisive(), sol.fallback_belief);

  const ModelParams& P = sol.params;
  const double M = P.policy_cap;
  auto feasible = [&](double p) { return pooling_feasible(P, p, sol.fallback_p, mu, 0.0); };

  // largest feasible grid point, then bisect toward the first infeasible one
  int best = -1;
  for (int k = kScanPoints; k >= 0; --k) {
    if (feasible(M * k / kScanPoints)) {
      best = k;
      break;
    }
  }
  if (best < 0)
    throw Error(ErrorCode::regime, "no policy satisfies the pooling conditions");
  double lo = M * best / kScanPoints;
  if (best < kScanPoints) {
    double hi = M * (best + 1) / kScanPoints;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
  }
  sol.tilde_p = lo;

  const double p_low = reservation_policy(P, P.decisive(), Signal::L, mu);
  if (!(sol.tilde_p > p_low)) {
    std::ostringstream os;
    os << "pooling offer " << sol.tilde_p
       << " does not exceed the low-signal acceptance bound " << p_low;
    throw Error(ErrorCode::regime, os.str());
  }

  const int first = low_marginal(P);
  double worst_low = -1e300, worst_high = -1e300;
  for (int k = 0; k < 2; ++k) {
    sol.continuation[k] =
        continuation_values(P, sol.tilde_p, sol.fallback_p, mu, first + k);
    sol.residuals[k] =
        pooling_residuals(P, sol.tilde_p, sol.fallback_p, mu, first + k);
    worst_low = std::max(worst_low, sol.residuals[k].low_signal);
    worst_high = std::max(worst_high, sol.residuals[k].high_signal);
  }
  sol.binding = worst_low >= worst_high ? BindingConstraint::low_signal
                                        : BindingConstraint::high_signal;
  return sol;
}

StrategyProfile build_pooling_profile(const PoolingSolution& sol) {
  const ModelParams P = sol.params;
  const double tilde_p = sol.tilde_p;
  // beliefs at or below the midpoint are treated as post-double-rejection
  const double cut = 0.5 * (sol.fallback_belief + sol.prior);
  const int first = P.decisive() - 1;
  const int q = P.decisive();

  StrategyProfile prof;
  prof.proposal = [P, tilde_p, cut](double mu) {
    if (mu > cut) return std::vector<ProposalAtom>{{tilde_p, 1.0}};
    return std::vector<ProposalAtom>{
        {no_screening_policy(P, P.decisive(), mu), 1.0}};
  };
  prof.acceptance = [P, tilde_p, cut, first, q](int j, Signal s, double mu,
                                                double p) -> double {
    const double own = reservation_policy(P, j, Signal::L, mu);
    if (mu <= cut) return p <= own ? 1.0 : 0.0;
    if (j < first) return p <= tilde_p ? 1.0 : 0.0;
    if (j <= q) {
      if (p <= reservation_policy(P, q, Signal::L, mu)) return 1.0;
      return s == Signal::H && p <= tilde_p ? 1.0 : 0.0;
    }
    return p <= own ? 1.0 : 0.0;
  };
  return prof;
}

}  // namespace agenda
