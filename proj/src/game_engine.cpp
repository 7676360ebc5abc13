#include "agenda/game_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <tuple>

#include "agenda/beliefs.hpp"

namespace agenda {

double OutcomeDistribution::total() const {
  double s = never_prob;
  for (const auto& a : atoms) s += a.prob;
  return s;
}

OutcomeDistribution induced_distribution(const ModelParams& params,
                                         const StrategyProfile& profile,
                                         double mu, State w,
                                         const EngineOptions& opts) {
  if (opts.max_periods < 1)
    throw Error(ErrorCode::precondition, "horizon must be >= 1");
  const int n = params.n_voters;
  const std::uint32_t n_masks = 1u << n;

  std::map<std::pair<int, double>, double> atoms;
  std::map<double, double> current{{mu, 1.0}};
  OutcomeDistribution out;
  double residual = 1.0;

  for (int t = 1; t <= opts.max_periods; ++t) {
    std::map<double, double> next;
    for (const auto& [b, mass] : current) {
      const auto props = profile.proposal(b);
      if (props.empty())
        throw Error(ErrorCode::undefined_belief,
                    "proposal rule undefined at belief " + std::to_string(b));
      for (const auto& pa : props) {
        if (pa.prob <= 0.0) continue;
        const auto al = composite_acceptance_all(params, profile, pa.policy,
                                                 State::low, b);
        const auto ah = composite_acceptance_all(params, profile, pa.policy,
                                                 State::high, b);
        const auto& aw = w == State::high ? ah : al;
        const double base = mass * pa.prob;
        for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
          double prob = base;
          for (int i = 0; i < n && prob > 0.0; ++i)
            prob *= (mask >> i & 1u) ? aw[i] : 1.0 - aw[i];
          if (prob <= 0.0) continue;
          if (std::popcount(mask) >= params.quota) {
            atoms[{t, pa.policy}] += prob;
          } else {
            next[public_update(b, mask, al, ah)] += prob;
          }
        }
      }
    }
    out.periods = t;
    residual = 0.0;
    for (const auto& kv : next) residual += kv.second;
    current.swap(next);
    if (residual < opts.residual_tol) break;
  }
  out.never_prob = residual;
  out.atoms.reserve(atoms.size());
  for (const auto& [key, prob] : atoms)
    out.atoms.push_back({key.first, key.second, prob});
  return out;
}

double tail_prob(const OutcomeDistribution& dist, double p) {
  double s = 0.0;
  for (const auto& a : dist.atoms)
    if (a.policy > p) s += a.prob;
  return s;
}

double state_payoff(const ModelParams& params, int who, State w,
                    const OutcomeDistribution& dist) {
  double v = dist.never_prob * stage_utility(params, who, 0.0, w);
  for (const auto& a : dist.atoms)
    v += a.prob *
         discounted_payoff(params, who, w, Outcome::at(a.period, a.policy));
  return v;
}

Payoffs expected_payoffs(const ModelParams& params,
                         const OutcomeDistribution& g_low,
                         const OutcomeDistribution& g_high, double mu) {
  Payoffs out;
  out.proposer = mu * state_payoff(params, kProposer, State::high, g_high) +
                 (1.0 - mu) * state_payoff(params, kProposer, State::low, g_low);
  out.truncation_bound =
      params.policy_cap *
      (mu * g_high.never_prob * std::pow(params.discount, g_high.periods) +
       (1.0 - mu) * g_low.never_prob * std::pow(params.discount, g_low.periods));
  out.voter.resize(params.n_voters);
  for (int i = 0; i < params.n_voters; ++i) {
    const double vh = state_payoff(params, i, State::high, g_high);
    const double vl = state_payoff(params, i, State::low, g_low);
    for (Signal s : kSignals) {
      const double mh = signal_posterior(mu, s, params.precisions[i]);
      out.voter[i][s == Signal::H] = mh * vh + (1.0 - mh) * vl;
    }
  }
  return out;
}

Payoffs evaluate_profile(const ModelParams& params,
                         const StrategyProfile& profile, double mu,
                         const EngineOptions& opts) {
  const auto gl = induced_distribution(params, profile, mu, State::low, opts);
  const auto gh = induced_distribution(params, profile, mu, State::high, opts);
  return expected_payoffs(params, gl, gh, mu);
}

VoteValues vote_values(const ModelParams& params,
                       const StrategyProfile& profile, int voter, Signal s,
                       double mu, double p, const EngineOptions& opts) {
  const int n = params.n_voters;
  const double delta = params.discount;
  const auto al = composite_acceptance_all(params, profile, p, State::low, mu);
  const auto ah = composite_acceptance_all(params, profile, p, State::high, mu);
  const double mh = signal_posterior(mu, s, params.precisions[voter]);

  std::map<std::pair<double, int>, double> cont;
  auto continuation = [&](double b, State w) {
    const auto key = std::make_pair(b, static_cast<int>(w));
    auto it = cont.find(key);
    if (it != cont.end()) return it->second;
    const auto g = induced_distribution(params, profile, b, w, opts);
    const double v = state_payoff(params, voter, w, g);
    cont.emplace(key, v);
    return v;
  };

  VoteValues out;
  out.prescribed_accept_prob = profile.acceptance(voter, s, mu, p);
  const std::uint32_t bit = 1u << voter;
  for (State w : kStates) {
    const double pw = w == State::high ? mh : 1.0 - mh;
    if (pw <= 0.0) continue;
    const auto& aw = w == State::high ? ah : al;
    const double u_p = stage_utility(params, voter, p, w);
    const double u_0 = stage_utility(params, voter, 0.0, w);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (mask & bit) continue;
      double prob = pw;
      for (int j = 0; j < n && prob > 0.0; ++j) {
        if (j == voter) continue;
        prob *= (mask >> j & 1u) ? aw[j] : 1.0 - aw[j];
      }
      if (prob <= 0.0) continue;
      const int yes = std::popcount(mask);
      for (int act = 0; act < 2; ++act) {
        const std::uint32_t full = act ? (mask | bit) : mask;
        double v;
        if (yes + act >= params.quota) {
          v = u_p;
        } else {
          const double b = public_update(mu, full, al, ah);
          v = (1.0 - delta) * u_0 + delta * continuation(b, w);
        }
        (act ? out.accept : out.reject) += prob * v;
      }
    }
  }
  return out;
}

double deviation_gain(const ModelParams& params,
                      const StrategyProfile& profile, int voter, Signal s,
                      double mu, double p, bool accept,
                      const EngineOptions& opts) {
  const auto v = vote_values(params, profile, voter, s, mu, p, opts);
  return (accept ? v.accept : v.reject) - v.prescribed();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Episode {
  State state = State::low;
  std::uint32_t first_signals = 0;  // bit i set if voter i drew H in period 1
  int period = 0;
  double policy = 0.0;
  double proposer = 0.0;
  std::vector<double> voter;
};

Episode play_episode(const ModelParams& params, const StrategyProfile& profile,
                     std::uint64_t seed, int max_periods) {
  std::mt19937_64 gen(seed);
  auto unif = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const int n = params.n_voters;
  Episode e;
  e.state = unif() < params.prior_high ? State::high : State::low;
  double mu = params.prior_high;
  std::vector<Signal> sig(n);
  std::vector<double> alpha(n);
  for (int t = 1; t <= max_periods; ++t) {
    const auto props = profile.proposal(mu);
    if (props.empty())
      throw Error(ErrorCode::undefined_belief, "proposal rule undefined");
    const double up = unif();
    double acc = 0.0;
    double p = props.back().policy;
    for (const auto& a : props) {
      acc += a.prob;
      if (up < acc) {
        p = a.policy;
        break;
      }
    }
    for (int i = 0; i < n; ++i) {
      const double ui = unif();
      const bool correct = ui < params.precisions[i];
      const bool high = (e.state == State::high) == correct;
      sig[i] = high ? Signal::H : Signal::L;
      if (t == 1 && high) e.first_signals |= 1u << i;
    }
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
      const double ui = unif();
      if (ui < profile.acceptance(i, sig[i], mu, p)) mask |= 1u << i;
    }
    if (std::popcount(mask) >= params.quota) {
      e.period = t;
      e.policy = p;
      break;
    }
    const auto al = composite_acceptance_all(params, profile, p, State::low, mu);
    const auto ah = composite_acceptance_all(params, profile, p, State::high, mu);
    mu = public_update(mu, mask, al, ah);
  }
  const Outcome o = e.period > 0 ? Outcome::at(e.period, e.policy) : Outcome::never();
  e.proposer = discounted_payoff(params, kProposer, e.state, o);
  e.voter.resize(n);
  for (int i = 0; i < n; ++i)
    e.voter[i] = discounted_payoff(params, i, e.state, o);
  return e;
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t episode) {
  return splitmix64(splitmix64(seed) ^ splitmix64(episode + 0x632BE59BD9B4E019ull));
}

SimulationResult simulate(const ModelParams& params,
                          const StrategyProfile& profile,
                          const SimulationOptions& opts) {
  if (opts.episodes < 1)
    throw Error(ErrorCode::precondition, "episodes must be >= 1");
  const std::int64_t m = opts.episodes;
  std::vector<Episode> eps(m);
  std::vector<std::string> failures;

#pragma omp parallel for schedule(static) if (opts.parallel)
  for (std::int64_t k = 0; k < m; ++k) {
    try {
      eps[k] = play_episode(params, profile, episode_seed(opts.seed, k),
                            opts.max_periods);
    } catch (const std::exception& ex) {
#pragma omp critical
      failures.emplace_back(ex.what());
    }
  }
  if (!failures.empty())
    throw Error(ErrorCode::internal, "simulation failed: " + failures.front());

  // fixed-order two-pass reduction: independent of the thread count
  const int n = params.n_voters;
  SimulationResult r;
  r.episodes = m;
  r.voter_mean.assign(n, {0.0, 0.0});
  r.voter_se.assign(n, {0.0, 0.0});
  r.voter_count.assign(n, {0, 0});
  std::map<std::tuple<int, int, double>, std::int64_t> cells;
  double s = 0.0;
  for (const auto& e : eps) {
    s += e.proposer;
    for (int i = 0; i < n; ++i) {
      const int h = (e.first_signals >> i) & 1u;
      r.voter_mean[i][h] += e.voter[i];
      ++r.voter_count[i][h];
    }
    ++cells[{static_cast<int>(e.state), e.period, e.policy}];
  }
  r.proposer_mean = s / m;
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < 2; ++h)
      if (r.voter_count[i][h] > 0) r.voter_mean[i][h] /= r.voter_count[i][h];
  double ss = 0.0;
  std::vector<std::array<double, 2>> vss(n, {0.0, 0.0});
  for (const auto& e : eps) {
    ss += (e.proposer - r.proposer_mean) * (e.proposer - r.proposer_mean);
    for (int i = 0; i < n; ++i) {
      const int h = (e.first_signals >> i) & 1u;
      const double d = e.voter[i] - r.voter_mean[i][h];
      vss[i][h] += d * d;
    }
  }
  auto se = [](double sum_sq, std::int64_t k) {
    return k > 1 ? std::sqrt(sum_sq / (k - 1) / k) : 0.0;
  };
  r.proposer_se = se(ss, m);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < 2; ++h) r.voter_se[i][h] = se(vss[i][h], r.voter_count[i][h]);
  for (const auto& [key, cnt] : cells)
    r.cells.push_back({static_cast<State>(std::get<0>(key)), std::get<1>(key),
                       std::get<2>(key), static_cast<double>(cnt) / m});
  return r;
}

}  // namespace agenda
