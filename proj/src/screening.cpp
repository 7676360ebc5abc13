#include "agenda/screening.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agenda/beliefs.hpp"

namespace agenda {

namespace {

// Largest p with U_i(p;H,mu) = (1-d) U_i(0;H,mu) + d E[w | H, mu].
double indifference_policy(const ModelParams& params, int i, double mu,
                           const std::array<double, 2>& w) {
  const double d = params.discount;
  const double mh = signal_posterior(mu, Signal::H, params.precisions[i]);
  const double ah = 0.5 * params.reservation_high[i];
  const double al = 0.5 * params.reservation_low[i];
  const double a = mh * ah + (1.0 - mh) * al;
  const double e2 = mh * ah * ah + (1.0 - mh) * al * al;
  const double var = std::max(0.0, e2 - a * a);
  const double rhs = (1.0 - d) * (-e2) + d * (mh * w[1] + (1.0 - mh) * w[0]);
  // -(p-a)^2 - var = rhs, largest root
  const double disc = -rhs - var;
  if (disc < 0.0) {
    std::ostringstream os;
    os << "indifference has no root at belief " << mu;
    throw Error(ErrorCode::bracket_failure, os.str());
  }
  return std::min(a + std::sqrt(disc), params.policy_cap);
}

}  // namespace

struct ScreeningLadder {
  ModelParams params;
  int informed = 0;
  std::vector<double> cut;  // M_1..M_k
  // continuation values from M_{r-1}, stored at index r-1 (rung 1 unused)
  std::vector<std::array<double, 2>> w_voter;
  std::vector<std::array<double, 2>> w_prop;
  std::vector<double> top_policy;  // P_r(M_r)

  int rungs() const { return static_cast<int>(cut.size()); }

  int rung(double mu) const {
    // posteriors that land on a cutoff carry rounding noise
    for (int r = 1; r <= rungs(); ++r)
      if (mu <= cut[r - 1] * (1.0 + 1e-12)) return r;
    return rungs();
  }

  double tau() const { return params.precisions[informed]; }

  double policy(int r, double mu) const {
    if (r == 1) return no_screening_policy(params, informed, mu);
    return indifference_policy(params, informed, mu, w_voter[r - 1]);
  }

  double phi(int r, double mu) const {
    return acceptance_prob(mu, cut[r - 2], tau());
  }

  // proposer value at belief mu when rung r's offer is made now
  double value(int r, double mu) const {
    const double p = policy(r, mu);
    if (r == 1) return p;
    const double f = phi(r, mu);
    const double t = tau();
    const double acc_h = t * f, acc_l = (1.0 - t) * f;
    const double d = params.discount;
    const auto& w = w_prop[r - 1];
    return mu * (acc_h * p + (1.0 - acc_h) * d * w[1]) +
           (1.0 - mu) * (acc_l * p + (1.0 - acc_l) * d * w[0]);
  }
};

double acceptance_prob(double mu, double m_prev, double tau) {
  if (!(m_prev < mu))
    throw Error(ErrorCode::precondition, "acceptance_prob needs M_prev < mu");
  const double den = mu * tau * (1.0 - m_prev) - m_prev * (1.0 - mu) * (1.0 - tau);
  const double phi = (mu - m_prev) / den;
  if (!(den > 0.0) || !(phi > 0.0) || phi > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "no acceptance probability in (0,1] moves belief " << mu << " to "
       << m_prev;
    throw Error(ErrorCode::regime, os.str());
  }
  return std::min(phi, 1.0);
}

double no_screening_policy(const ModelParams& params, int informed, double mu) {
  return std::min(reservation_policy(params, informed, Signal::L, mu),
                  reservation_policy(params, params.decisive(), Signal::L, mu));
}

double screening_limit_value(const ModelParams& params, int informed, double mu) {
  const int q = params.decisive();
  const double yl = params.reservation_low[q], yh = params.reservation_high[q];
  const double top =
      std::max(yl, std::min(yh, params.reservation_high[informed] - yl));
  return mu * top + (1.0 - mu) * yl;
}

namespace {

StrategyProfile ladder_profile(std::shared_ptr<const ScreeningLadder> lad) {
  StrategyProfile prof;
  prof.proposal = [lad](double mu) {
    return std::vector<ProposalAtom>{{lad->policy(lad->rung(mu), mu), 1.0}};
  };
  prof.acceptance = [lad](int j, Signal s, double mu, double p) -> double {
    const auto& par = lad->params;
    const double eps = 1e-12 * std::max(1.0, std::abs(p));
    const int q = par.decisive();
    if (j == lad->informed) {
      const int r = lad->rung(mu);
      if (r == 1) return p <= lad->policy(1, mu) + eps ? 1.0 : 0.0;
      if (s == Signal::L) return p <= lad->top_policy[0] + eps ? 1.0 : 0.0;
      if (p <= lad->top_policy[r - 2] + eps) return 1.0;
      if (p <= lad->policy(r, mu) + eps) {
        // off-path beliefs may sit outside the reachable range
        const double t = lad->tau();
        const double m_prev = lad->cut[r - 2];
        const double den = mu * t * (1.0 - m_prev) - m_prev * (1.0 - mu) * (1.0 - t);
        if (!(mu > m_prev) || !(den > 0.0)) return 1.0;
        return std::clamp((mu - m_prev) / den, 0.0, 1.0);
      }
      return 0.0;
    }
    if (j <= q)
      return p <= reservation_policy(par, q, Signal::H, mu) + eps ? 1.0 : 0.0;
    return p <= reservation_policy(par, j, Signal::L, mu) + eps ? 1.0 : 0.0;
  };
  return prof;
}

}  // namespace

namespace {

// Proposer value at belief m from an offer the informed voter accepts iff H,
// followed by the sure offer p_1 at the revealed-L belief.
double full_screen_value(const ModelParams& params, int i, double m) {
  const double tau = params.precisions[i];
  const double d = params.discount;
  const double m_rej = signal_posterior(m, Signal::L, tau);
  const double p1 = no_screening_policy(params, i, m_rej);
  const std::array<double, 2> w{stage_utility(params, i, p1, State::low),
                                stage_utility(params, i, p1, State::high)};
  const double p = indifference_policy(params, i, m, w);
  return m * (tau * p + (1.0 - tau) * d * p1) +
         (1.0 - m) * ((1.0 - tau) * p + tau * d * p1);
}

// First belief where sure acceptance of p_1 stops beating full screening.
double first_cutoff(const ModelParams& params, int i) {
  auto diff = [&](double m) {
    try {
      return no_screening_policy(params, i, m) - full_screen_value(params, i, m);
    } catch (const Error& e) {
      // no acceptable screening offer at this belief
      if (e.code() != ErrorCode::bracket_failure) throw;
      return 1.0;
    }
  };
  const int scan = 4096;
  double lo = 0.0;
  for (int k = 1; k < scan; ++k) {
    const double m = static_cast<double>(k) / scan;
    if (diff(m) < 0.0) {
      double a = lo, b = m;
      while (b - a > 1e-15) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        (diff(mid) >= 0.0 ? a : b) = mid;
      }
      return a;
    }
    lo = m;
  }
  return 1.0;
}

}  // namespace

ScreeningPath screening_sequence(const ModelParams& params, int informed,
                                 double prior, const ScreeningOptions& opts) {
  validate_params(params);
  if (informed < 0 || informed > params.decisive())
    throw Error(ErrorCode::precondition, "informed voter must satisfy i <= q");
  if (!(prior > 0.0 && prior < 1.0))
    throw Error(ErrorCode::prior_out_of_range, "prior must lie in (0,1)");

  auto lad = std::make_shared<ScreeningLadder>();
  lad->params = params;
  lad->informed = informed;
  const double tau = lad->tau();

  const double m1 = first_cutoff(params, informed);
  lad->cut = {m1};
  lad->w_voter = {{0.0, 0.0}};
  lad->w_prop = {{0.0, 0.0}};
  lad->top_policy = {lad->policy(1, m1)};

  while (prior > lad->cut.back()) {
    const int t = lad->rungs() + 1;
    if (t > opts.max_steps)
      throw Error(ErrorCode::non_convergence,
                  "screening ladder did not reach the prior within max_steps");
    const double m_prev = lad->cut.back();

    // continuation from M_{t-1} only involves rungs below t
    {
      const auto prof = ladder_profile(lad);
      std::array<double, 2> wv{}, wa{};
      for (State w : kStates) {
        const auto g = induced_distribution(params, prof, m_prev, w, opts.engine);
        wv[w == State::high] = state_payoff(params, informed, w, g);
        wa[w == State::high] = state_payoff(params, kProposer, w, g);
      }
      lad->w_voter.push_back(wv);
      lad->w_prop.push_back(wa);
      lad->cut.push_back(1.0);
    }

    // largest belief where the shorter ladder is weakly preferred
    double hi = std::min(1.0, signal_posterior(m_prev, Signal::H, tau));
    if (t >= 3)
      hi = std::min(hi, signal_posterior(lad->cut[t - 3], Signal::H, tau));
    auto diff = [&](double m) {
      try {
        return lad->value(t - 1, m) - lad->value(t, m);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::bracket_failure) throw;
        return 1.0;  // the longer rung has no acceptable offer here
      }
    };
    const int scan = 64;
    double lo_m = m_prev, m_t = hi;
    for (int k = 1; k <= scan; ++k) {
      const double m = m_prev + (hi - m_prev) * k / scan;
      if (diff(m) < 0.0) {
        double a = lo_m, b = m;
        while (b - a > 1e-15) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          (diff(mid) >= 0.0 ? a : b) = mid;
        }
        m_t = a;
        break;
      }
      lo_m = m;
    }
    if (!(m_t > m_prev + 1e-13)) {
      std::ostringstream os;
      os << "belief cutoffs stalled at M_" << t - 1 << " = " << m_prev;
      throw Error(ErrorCode::regime, os.str());
    }
    lad->cut.back() = m_t;
    lad->top_policy.push_back(lad->policy(t, m_t));
  }

  ScreeningPath path;
  path.informed = informed;
  path.prior = prior;
  path.cutoffs = lad->cut;
  const int T = lad->rungs();
  for (int t = 1; t <= T; ++t) {
    const double b = t < T ? lad->cut[t - 1] : prior;
    path.beliefs.push_back(b);
    path.policies.push_back(t < T ? lad->top_policy[t - 1] : lad->policy(t, b));
    path.accept_probs.push_back(t == 1 ? 1.0 : lad->phi(t, b));
  }
  for (int t = 2; t <= T; ++t)
    if (!(path.policies[t - 1] > path.policies[0])) {
      std::ostringstream os;
      os << "screening offer p_" << t << " does not exceed p_1";
      throw Error(ErrorCode::regime, os.str());
    }
  path.ladder = lad;
  return path;
}

StrategyProfile build_screening_profile(const ModelParams&,
                                        const ScreeningPath& path) {
  return ladder_profile(path.ladder);
}

ScreeningCheck check_screening_path(const ModelParams& params,
                                    const ScreeningPath& path,
                                    const EngineOptions& opts) {
  const auto prof = build_screening_profile(params, path);
  const int i = path.informed;
  const int n = params.n_voters;
  const double d = params.discount;
  ScreeningCheck out;
  for (int t = 1; t <= path.length(); ++t) {
    const double mu = path.beliefs[t - 1];
    const double p = path.policies[t - 1];
    if (t >= 2) {
      const auto al = composite_acceptance_all(params, prof, p, State::low, mu);
      const auto ah = composite_acceptance_all(params, prof, p, State::high, mu);
      std::uint32_t others = 0;
      for (int j = 0; j < n; ++j)
        if (j != i && prof.acceptance(j, Signal::H, mu, p) > 0.5) others |= 1u << j;
      const double post = public_update(mu, others, al, ah);
      out.max_bayes = std::max(out.max_bayes, std::abs(post - path.cutoffs[t - 2]));

      const double mh = signal_posterior(mu, Signal::H, params.precisions[i]);
      double cont = 0.0;
      for (State w : kStates) {
        const auto g = induced_distribution(params, prof, post, w, opts);
        cont += (w == State::high ? mh : 1.0 - mh) * state_payoff(params, i, w, g);
      }
      const double lhs = expected_utility(params, i, p, Signal::H, mu);
      const double rhs =
          (1.0 - d) * expected_utility(params, i, 0.0, Signal::H, mu) + d * cont;
      out.max_indifference = std::max(out.max_indifference, std::abs(lhs - rhs));
    }
    for (Signal s : kSignals) {
      const auto v = vote_values(params, prof, i, s, mu, p, opts);
      out.max_deviation = std::max(
          {out.max_deviation, v.accept - v.prescribed(), v.reject - v.prescribed()});
    }
  }
  out.exact_value = evaluate_profile(params, prof, path.prior, opts).proposer;
  return out;
}

}  // namespace agenda
