#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <map>

#include "agenda/beliefs.hpp"
#include "agenda/game_engine.hpp"
#include "agenda/poisson_binomial.hpp"
#include "agenda/screening.hpp"

using namespace agenda;

namespace {

StrategyProfile unanimous(double p) {
  StrategyProfile s;
  s.proposal = [p](double) { return std::vector<ProposalAtom>{{p, 1.0}}; };
  s.acceptance = [](int, Signal, double, double) { return 1.0; };
  return s;
}

// Explicit tree over signal and vote profiles, period by period, with Bayes
// done from scratch. Returns mass on (period, policy) for periods <= depth.
std::map<std::pair<int, double>, double> tree(const ModelParams& P,
                                              const StrategyProfile& prof,
                                              double mu, State w, int depth) {
  std::map<std::pair<int, double>, double> out;
  const int n = P.n_voters;
  std::function<void(double, double, int)> go = [&](double b, double mass, int t) {
    if (t > depth) return;
    for (const auto& pa : prof.proposal(b)) {
      const double p = pa.policy;
      // P(vote mask | state) summing over signal profiles
      auto mask_like = [&](std::uint32_t m, State st) {
        double total = 0.0;
        for (std::uint32_t sig = 0; sig < (1u << n); ++sig) {
          double pr = 1.0;
          for (int i = 0; i < n; ++i) {
            const bool H = sig >> i & 1u;
            const double tau = P.precisions[i];
            pr *= (H == (st == State::high)) ? tau : 1.0 - tau;
            const double a = prof.acceptance(i, H ? Signal::H : Signal::L, b, p);
            pr *= (m >> i & 1u) ? a : 1.0 - a;
          }
          total += pr;
        }
        return total;
      };
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        const double lw = mask_like(m, w);
        const double prob = mass * pa.prob * lw;
        if (prob <= 0.0) continue;
        if (std::popcount(m) >= P.quota) {
          out[{t, p}] += prob;
        } else {
          const double lh = mask_like(m, State::high), ll = mask_like(m, State::low);
          const double den = b * lh + (1 - b) * ll;
          const double nb = den > 1e-30 ? b * lh / den : b;
          go(nb, prob, t + 1);
        }
      }
    }
  };
  go(mu, 1.0, 1);
  return out;
}

void compare_with_tree(const ModelParams& P, const StrategyProfile& prof, double mu,
                       State w, int depth) {
  const auto g = induced_distribution(P, prof, mu, w);
  const auto ref = tree(P, prof, mu, w, depth);
  // aggregate engine atoms by period, compare per (period, policy) with tolerance
  for (const auto& [key, mass] : ref) {
    double got = 0.0;
    for (const auto& a : g.atoms)
      if (a.period == key.first && std::abs(a.policy - key.second) < 1e-9) got += a.prob;
    CHECK(got == doctest::Approx(mass).epsilon(1e-9));
  }
  double ref_total = 0.0, got_total = 0.0;
  for (const auto& kv : ref) ref_total += kv.second;
  for (const auto& a : g.atoms)
    if (a.period <= depth) got_total += a.prob;
  CHECK(got_total == doctest::Approx(ref_total).epsilon(1e-12));
}

}  // namespace

TEST_CASE("unanimous immediate acceptance is a point mass") {
  const auto P = canonical_params();
  const auto g = induced_distribution(P, unanimous(0.3), 0.5, State::low);
  REQUIRE(g.atoms.size() == 1);
  CHECK(g.atoms[0].period == 1);
  CHECK(g.atoms[0].policy == 0.3);
  CHECK(g.atoms[0].prob == doctest::Approx(1.0));
  CHECK(g.never_prob == 0.0);
}

TEST_CASE("tail probability") {
  OutcomeDistribution d;
  d.atoms = {{1, 2.0, 1.0}};
  CHECK(tail_prob(d, 1.0) == 1.0);
  CHECK(tail_prob(d, 2.0) == 0.0);
  d.atoms = {{1, 3.0, 0.4}, {2, 1.0, 0.6}};
  CHECK(tail_prob(d, 2.0) == doctest::Approx(0.4));
}

TEST_CASE("expected payoffs on hand-built distributions") {
  const auto P = canonical_params();
  OutcomeDistribution a, b;
  a.atoms = {{1, 1.7, 1.0}};
  CHECK(expected_payoffs(P, a, a, 0.3).proposer == doctest::Approx(1.7));
  OutcomeDistribution lo, hi;
  lo.atoms = {{1, 1.0, 1.0}};
  hi.atoms = {{1, 3.0, 1.0}};
  CHECK(expected_payoffs(P, lo, hi, 0.5).proposer == doctest::Approx(2.0));
  OutcomeDistribution never;
  never.never_prob = 1.0;
  const auto pay = expected_payoffs(P, never, never, 0.5);
  CHECK(pay.proposer == 0.0);
  // voter 1, signal H: posterior 0.9 on h
  CHECK(pay.voter[1][1] == doctest::Approx(0.9 * -1.96 + 0.1 * -0.25));
}

TEST_CASE("one-shot acceptance matches the Poisson binomial tail") {
  const auto P = canonical_params();
  StrategyProfile prof;
  prof.proposal = [](double) { return std::vector<ProposalAtom>{{2.0, 1.0}}; };
  prof.acceptance = [](int i, Signal s, double, double) {
    return s == Signal::H ? 1.0 : (i == 0 ? 0.5 : 0.0);
  };
  EngineOptions one;
  one.max_periods = 1;
  const auto g = induced_distribution(P, prof, 0.5, State::high, one);
  const auto z = composite_acceptance_all(P, prof, 2.0, State::high, 0.5);
  CHECK(g.accept_prob() == doctest::Approx(pb::tail_at_least(z, P.quota)).epsilon(1e-14));
  CHECK(g.total() == doctest::Approx(1.0));
}

TEST_CASE("engine matches explicit tree enumeration") {
  auto P = canonical_params();
  SUBCASE("mixed informative profile") {
    StrategyProfile prof;
    prof.proposal = [](double mu) {
      return std::vector<ProposalAtom>{{mu > 0.4 ? 2.5 : 1.2, 0.7}, {1.5, 0.3}};
    };
    prof.acceptance = [](int i, Signal s, double, double p) {
      if (p < 1.3) return 1.0;
      return s == Signal::H ? 0.8 - 0.1 * i : 0.1 * i;
    };
    for (State w : kStates) compare_with_tree(P, prof, 0.5, w, 3);
  }
  SUBCASE("screening profile") {
    P.discount = 0.95;
    P.precisions.assign(3, 0.95);
    const auto path = screening_sequence(P, 0, 0.5);
    const auto prof = build_screening_profile(P, path);
    for (State w : kStates) compare_with_tree(P, prof, 0.5, w, 3);
  }
}

TEST_CASE("vote values reduce to the sure-acceptance comparison") {
  // everyone else accepts for sure: own vote never pivotal for q=2 when 2 others accept
  const auto P = canonical_params();
  const auto prof = unanimous(1.0);
  const auto v = vote_values(P, prof, 2, Signal::L, 0.5, 1.0);
  CHECK(v.accept == doctest::Approx(v.reject));
  CHECK(deviation_gain(P, prof, 2, Signal::L, 0.5, 1.0, false) == doctest::Approx(0.0));
}

TEST_CASE("simulation: degenerate profile and determinism") {
  const auto P = canonical_params();
  SimulationOptions so;
  so.seed = 9;
  so.episodes = 2000;
  const auto r = simulate(P, unanimous(0.8), so);
  CHECK(r.proposer_mean == doctest::Approx(0.8));
  CHECK(r.proposer_se == doctest::Approx(0.0));

  auto Q = canonical_params();
  Q.discount = 0.95;
  Q.precisions.assign(3, 0.95);
  const auto path = screening_sequence(Q, 0, 0.5);
  const auto prof = build_screening_profile(Q, path);
  so.episodes = 20000;
  const auto a = simulate(Q, prof, so);
  const auto b = simulate(Q, prof, so);
  so.parallel = false;
  const auto c = simulate(Q, prof, so);
  CHECK(a.proposer_mean == b.proposer_mean);
  CHECK(a.proposer_mean == c.proposer_mean);
  CHECK(a.proposer_se == c.proposer_se);
  REQUIRE(a.cells.size() == c.cells.size());
  for (std::size_t k = 0; k < a.cells.size(); ++k)
    CHECK(a.cells[k].frequency == c.cells[k].frequency);
  const double exact = evaluate_profile(Q, prof, 0.5).proposer;
  CHECK(std::abs(a.proposer_mean - exact) < 4.0 * a.proposer_se);
}

TEST_CASE("episode seeds differ across episodes and seeds") {
  CHECK(episode_seed(1, 0) != episode_seed(1, 1));
  CHECK(episode_seed(1, 0) != episode_seed(2, 0));
  CHECK(episode_seed(5, 7) == episode_seed(5, 7));
}
