#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "agenda/benchmarks.hpp"
#include "agenda/beliefs.hpp"
#include "agenda/error.hpp"
#include "agenda/screening.hpp"

using namespace agenda;

namespace {

ModelParams grid_point(double d, double tau) {
  auto P = canonical_params();
  P.discount = d;
  P.precisions.assign(3, tau);
  return P;
}

}  // namespace

TEST_CASE("acceptance probability solves the Bayes equation") {
  CHECK(acceptance_prob(0.5, 0.2, 0.9) == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  for (auto [mu, m] : {std::pair{0.3, 0.05}, std::pair{0.6, 0.2}, std::pair{0.9, 0.4}}) {
    const double phi = acceptance_prob(mu, m, 0.95);
    const double rej_h = 1 - 0.95 * phi, rej_l = 1 - 0.05 * phi;
    CHECK(mu * rej_h / (mu * rej_h + (1 - mu) * rej_l) == doctest::Approx(m).epsilon(1e-13));
  }
  CHECK_THROWS_AS(acceptance_prob(0.2, 0.5, 0.9), Error);
}

TEST_CASE("no-screening offer is the lower of the two low-signal reservations") {
  const auto P = canonical_params();
  const double mu = 0.5;
  CHECK(no_screening_policy(P, 0, mu) ==
        std::min(reservation_policy(P, 0, Signal::L, mu), reservation_policy(P, 1, Signal::L, mu)));
}

TEST_CASE("limit value formula") {
  auto P = canonical_params();
  CHECK(screening_limit_value(P, 0, 0.5) == doctest::Approx(1.5));
  P.reservation_high[0] = 5.0;
  CHECK(screening_limit_value(P, 0, 0.5) == doctest::Approx(complete_info_value(P, 0.5)));
  P.reservation_high = {1.8, 1.7, 1.5};
  P.reservation_low = {1.5, 1.0, 0.5};
  CHECK(screening_limit_value(P, 0, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("single voter second offer matches the closed form") {
  ModelParams P;
  P.n_voters = 1;
  P.quota = 1;
  P.policy_cap = 10;
  P.discount = 0.9;
  P.precisions = {1 - 1e-13};
  P.reservation_low = {1};
  P.reservation_high = {3};
  const auto path = screening_sequence(P, 0, 0.5);
  REQUIRE(path.length() >= 2);
  CHECK(std::abs(path.policies[1] - (1.5 + std::sqrt(0.45))) < 1e-9);
}

TEST_CASE("path structure") {
  const auto P = grid_point(0.95, 0.95);
  const auto path = screening_sequence(P, 0, 0.5);
  REQUIRE(path.length() >= 1);
  for (int t = 1; t < path.length(); ++t) {
    CHECK(path.policies[t] > path.policies[t - 1]);
    CHECK(path.cutoffs[t] > path.cutoffs[t - 1]);
  }
  CHECK(path.cutoffs.back() >= path.prior);
  for (double phi : path.accept_probs) {
    CHECK(phi > 0.0);
    CHECK(phi <= 1.0);
  }
}

TEST_CASE("on-path identities and no profitable deviation") {
  for (auto [d, tau] : {std::pair{0.95, 0.95}, std::pair{0.999, 0.999}}) {
    const auto P = grid_point(d, tau);
    const auto path = screening_sequence(P, 0, 0.5);
    const auto ck = check_screening_path(P, path);
    CHECK(ck.max_indifference < 1e-9);
    CHECK(ck.max_bayes < 1e-9);
    CHECK(ck.max_deviation <= 1e-9);
    CHECK(ck.exact_value <= complete_info_value(P, 0.5) + 1e-9);
  }
}

TEST_CASE("profile rules") {
  const auto P = grid_point(0.95, 0.95);
  const auto path = screening_sequence(P, 0, 0.5);
  const auto prof = build_screening_profile(P, path);
  const double p1 = path.policies[0];
  // low-signal informed voter rejects anything above p_1
  CHECK(prof.acceptance(0, Signal::L, 0.5, p1 + 0.01) == 0.0);
  CHECK(prof.acceptance(0, Signal::L, 0.5, p1) == 1.0);
  // below M_1 the offer is p_1 for sure
  const auto atoms = prof.proposal(path.cutoffs[0] * 0.5);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].policy == doctest::Approx(no_screening_policy(P, 0, path.cutoffs[0] * 0.5)));
  if (path.length() >= 2) {
    const double m = path.beliefs[path.length() - 1];
    const double pt = path.policies.back();
    CHECK(prof.acceptance(0, Signal::H, m, pt) ==
          doctest::Approx(path.accept_probs.back()));
  }
}

TEST_CASE("value grid approaches the limit") {
  const double limit = screening_limit_value(canonical_params(), 0, 0.5);
  double last_gap = 1e9;
  for (double tau : {0.99, 0.999, 0.9999}) {
    const auto P = grid_point(0.999, tau);
    const auto ck = check_screening_path(P, screening_sequence(P, 0, 0.5));
    const double gap = std::abs(ck.exact_value - limit);
    CHECK(gap <= last_gap + 1e-9);
    last_gap = gap;
  }
  CHECK(last_gap / limit < 0.05);
}

TEST_CASE("coase variant collapses to the low reservation") {
  auto P = grid_point(0.999, 0.9999);
  P.reservation_low = {1.5, 1.0, 0.5};
  P.reservation_high = {1.8, 1.7, 1.5};
  const auto ck = check_screening_path(P, screening_sequence(P, 0, 0.5));
  CHECK(std::abs(ck.exact_value - 1.0) < 0.02);
}
