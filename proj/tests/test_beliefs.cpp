#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "agenda/beliefs.hpp"

using namespace agenda;

namespace {

StrategyProfile constant_profile(double a) {
  StrategyProfile s;
  s.proposal = [](double) { return std::vector<ProposalAtom>{{1.0, 1.0}}; };
  s.acceptance = [a](int, Signal, double, double) { return a; };
  return s;
}

// voters in `informative` accept iff H; others accept with prob 0.5
StrategyProfile informative_profile(std::vector<int> informative) {
  StrategyProfile s;
  s.proposal = [](double) { return std::vector<ProposalAtom>{{1.0, 1.0}}; };
  s.acceptance = [informative](int i, Signal sig, double, double) {
    for (int j : informative)
      if (j == i) return sig == Signal::H ? 1.0 : 0.0;
    return 0.5;
  };
  return s;
}

}  // namespace

TEST_CASE("signal posterior") {
  CHECK(signal_posterior(0.5, Signal::H, 0.9) == doctest::Approx(0.9));
  CHECK(signal_posterior(0.5, Signal::L, 0.9) == doctest::Approx(0.1));
  CHECK(signal_posterior(0.0, Signal::H, 0.9) == 0.0);
  CHECK(signal_posterior(0.0, Signal::L, 0.9) == 0.0);
  CHECK(signal_posterior(0.5, Signal::H, 0.5 + 1e-9) == doctest::Approx(0.5));
}

TEST_CASE("vote masks round-trip") {
  const VoteProfile a{1, 0, 1};
  CHECK(to_mask(a) == 5u);
  CHECK(from_mask(5u, 3) == a);
  CHECK(is_accepted(a, 2));
  CHECK_FALSE(is_accepted(a, 3));
}

TEST_CASE("uninformative votes leave the belief unchanged") {
  const auto P = canonical_params();
  const auto prof = constant_profile(0.7);
  for (std::uint32_t m = 0; m < 8; ++m)
    CHECK(public_update(P, 0.4, 1.0, from_mask(m, 3), prof) == doctest::Approx(0.4));
}

TEST_CASE("one informative voter reveals the signal") {
  const auto P = canonical_params();
  const auto prof = informative_profile({1});
  CHECK(public_update(P, 0.5, 1.0, {0, 1, 1}, prof) == doctest::Approx(0.9));
  CHECK(public_update(P, 0.5, 1.0, {1, 0, 0}, prof) == doctest::Approx(0.1));
}

TEST_CASE("opposite votes of symmetric informative voters cancel") {
  const auto P = canonical_params();
  const auto prof = informative_profile({0, 1});
  CHECK(public_update(P, 0.3, 1.0, {1, 0, 0}, prof) == doctest::Approx(0.3));
  CHECK(public_update(P, 0.3, 1.0, {0, 1, 1}, prof) == doctest::Approx(0.3));
}

TEST_CASE("zero-likelihood records keep the prior") {
  const auto P = canonical_params();
  const auto prof = constant_profile(1.0);
  CHECK(public_update(P, 0.37, 1.0, {0, 0, 0}, prof) == 0.37);
}

TEST_CASE("brute-force Bayes over signal profiles") {
  auto P = canonical_params();
  P.precisions = {0.8, 0.7, 0.9};
  StrategyProfile prof;
  prof.proposal = [](double) { return std::vector<ProposalAtom>{{1.0, 1.0}}; };
  prof.acceptance = [](int i, Signal s, double, double) {
    const double h[] = {0.9, 0.6, 0.3}, l[] = {0.2, 0.1, 0.25};
    return s == Signal::H ? h[i] : l[i];
  };
  const double mu = 0.45;
  for (std::uint32_t m = 0; m < 8; ++m) {
    double like[2] = {0, 0};
    for (int w = 0; w < 2; ++w)
      for (std::uint32_t sig = 0; sig < 8; ++sig) {
        double pr = 1.0;
        for (int i = 0; i < 3; ++i) {
          const bool H = sig >> i & 1u;
          const double t = P.precisions[i];
          pr *= (H == (w == 1)) ? t : 1 - t;
          const double a = prof.acceptance(i, H ? Signal::H : Signal::L, mu, 1.0);
          pr *= (m >> i & 1u) ? a : 1 - a;
        }
        like[w] += pr;
      }
    const double post = mu * like[1] / (mu * like[1] + (1 - mu) * like[0]);
    CHECK(public_update(P, mu, 1.0, from_mask(m, 3), prof) == doctest::Approx(post).epsilon(1e-13));
  }
}

TEST_CASE("monotonicity check") {
  const auto P = canonical_params();
  CHECK(check_monotone(P, informative_profile({0, 1, 2}), 1.0, 0.5));
  CHECK(check_monotone(P, constant_profile(0.3), 1.0, 0.5));
  StrategyProfile inv;
  inv.acceptance = [](int, Signal s, double, double) { return s == Signal::H ? 0.0 : 1.0; };
  inv.proposal = [](double) { return std::vector<ProposalAtom>{{1.0, 1.0}}; };
  CHECK_FALSE(check_monotone(P, inv, 1.0, 0.5));
}
