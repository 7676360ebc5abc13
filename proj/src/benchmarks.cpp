#include "agenda/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agenda/poisson_binomial.hpp"
#include "agenda/strategy.hpp"

namespace agenda {

double complete_info_value(const ModelParams& params, double mu) {
  const int q = params.decisive();
  return mu * params.reservation_high[q] + (1.0 - mu) * params.reservation_low[q];
}

double tioli_limit_value(const ModelParams& params, double mu) {
  const int q = params.decisive();
  return std::max(params.reservation_low[q], mu * params.reservation_high[q]);
}

namespace {

using Rule = std::vector<std::array<double, 2>>;

std::vector<double> state_accept(const ModelParams& params, const Rule& rule,
                                 State w) {
  std::vector<double> a(params.n_voters);
  for (int j = 0; j < params.n_voters; ++j)
    a[j] = signal_prob(params, j, Signal::L, w) * rule[j][0] +
           signal_prob(params, j, Signal::H, w) * rule[j][1];
  return a;
}

std::string snapshot(const Rule& rule) {
  std::ostringstream os;
  for (const auto& r : rule) os << static_cast<int>(r[0]) << static_cast<int>(r[1]) << ' ';
  return os.str();
}

}  // namespace

TioliEquilibrium tioli_equilibrium(const ModelParams& params, double mu,
                                   double p, const TioliOptions& opts) {
  if (p < 0.0 || p > params.policy_cap)
    throw Error(ErrorCode::policy_out_of_range, "policy outside [0, M]");
  const int n = params.n_voters;
  const int q = params.quota;
  TioliEquilibrium eq;
  eq.policy = p;

  std::array<double, 2> gain{};  // u^w(p) - u^w(0), index by state
  Rule rule(n);
  for (int i = 0; i < n; ++i) {
    for (State w : kStates)
      gain[w == State::high] =
          stage_utility(params, i, p, w) - stage_utility(params, i, 0.0, w);
    for (Signal s : kSignals) {
      double d = 0.0;
      for (State w : kStates)
        d += (w == State::high ? mu : 1.0 - mu) * signal_prob(params, i, s, w) *
             gain[w == State::high];
      rule[i][s == Signal::H] = d >= 0.0 ? 1.0 : 0.0;  // sincere start
    }
  }

  std::vector<std::string> trace{snapshot(rule)};
  for (int it = 1; it <= opts.max_iterations; ++it) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto al = state_accept(params, rule, State::low);
      const auto ah = state_accept(params, rule, State::high);
      const double piv_l = pb::pivotal_prob(al, i, q - 1);
      const double piv_h = pb::pivotal_prob(ah, i, q - 1);
      for (State w : kStates)
        gain[w == State::high] =
            stage_utility(params, i, p, w) - stage_utility(params, i, 0.0, w);
      for (Signal s : kSignals) {
        const double wl = (1.0 - mu) * signal_prob(params, i, s, State::low);
        const double wh = mu * signal_prob(params, i, s, State::high);
        double d;
        if (wl * piv_l + wh * piv_h > 0.0)
          d = wl * piv_l * gain[0] + wh * piv_h * gain[1];
        else
          d = wl * gain[0] + wh * gain[1];  // never pivotal: vote sincerely
        const double nv = d >= 0.0 ? 1.0 : 0.0;
        double& cur = rule[i][s == Signal::H];
        change = std::max(change, std::abs(nv - cur));
        cur = nv;
      }
    }
    eq.iterations = it;
    trace.push_back(snapshot(rule));
    if (change <= opts.tol) {
      eq.converged = true;
      break;
    }
  }
  eq.accept = rule;
  const auto al = state_accept(params, rule, State::low);
  const auto ah = state_accept(params, rule, State::high);
  eq.accept_low = pb::tail_at_least(al, q);
  eq.accept_high = pb::tail_at_least(ah, q);
  if (!eq.converged) eq.trace = std::move(trace);

  // ranking check on the others' signal-conditional votes
  if (n >= 2) {
    const double eps = 0.5 / n;
    for (int i = 0; i < n; ++i) {
      std::vector<double> zl, zh;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          zl.push_back(rule[j][0]);
          zh.push_back(rule[j][1]);
        }
      bool monotone = true;
      for (std::size_t k = 0; k < zl.size(); ++k) monotone &= zl[k] <= zh[k];
      if (!monotone || q > n - 1) continue;
      if (!pb::verify_ranking(zl, zh, q, eps).ok()) eq.ranking_ok = false;
    }
  }
  return eq;
}

TioliValue tioli_value(const ModelParams& params, double mu,
                       const TioliOptions& opts) {
  const double cap = params.policy_cap;
  std::vector<double> grid;
  const int steps = 1000;
  for (int k = 0; k <= steps; ++k) grid.push_back(cap * k / steps);
  for (int i = 0; i < params.n_voters; ++i)
    for (State w : kStates) grid.push_back(params.y(i, w));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const std::int64_t m = static_cast<std::int64_t>(grid.size());
  std::vector<TioliEquilibrium> eqs(m);
#pragma omp parallel for schedule(dynamic, 16) if (opts.parallel)
  for (std::int64_t k = 0; k < m; ++k)
    eqs[k] = tioli_equilibrium(params, mu, grid[k], opts);

  for (const auto& e : eqs)
    if (!e.converged) {
      std::ostringstream os;
      os << "tioli voting did not converge at p=" << e.policy
         << "; last rules: " << (e.trace.empty() ? "" : e.trace.back());
      throw Error(ErrorCode::non_convergence, os.str());
    }

  TioliValue best;
  auto consider = [&](const TioliEquilibrium& e) {
    const double v =
        e.policy * (mu * e.accept_high + (1.0 - mu) * e.accept_low);
    ++best.candidates;
    if (v > best.value) {
      best.value = v;
      best.proposal = e.policy;
      best.accept_low = e.accept_low;
      best.accept_high = e.accept_high;
    }
  };
  for (const auto& e : eqs) consider(e);

  // the payoff rises within a piece of constant voting behaviour, so push to
  // the right end of each piece the grid crosses
  auto same = [](const TioliEquilibrium& a, const TioliEquilibrium& b) {
    return a.accept_low == b.accept_low && a.accept_high == b.accept_high;
  };
  for (std::int64_t k = 0; k + 1 < m; ++k) {
    if (same(eqs[k], eqs[k + 1])) continue;
    double lo = grid[k], hi = grid[k + 1];
    TioliEquilibrium left = eqs[k];
    for (int it = 0; it < 60 && hi - lo > 1e-14 * cap; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto e = tioli_equilibrium(params, mu, mid, opts);
      if (e.converged && same(e, eqs[k])) {
        lo = mid;
        left = e;
      } else {
        hi = mid;
      }
    }
    consider(left);
  }
  return best;
}

}  // namespace agenda
