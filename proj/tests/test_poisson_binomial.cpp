#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "agenda/error.hpp"
#include "agenda/poisson_binomial.hpp"
#include "agenda/verification.hpp"

using namespace agenda;
using V = std::vector<double>;

TEST_CASE("pmf small cases") {
  CHECK(pb::pmf(V{0.5, 0.5, 0.5}, 2) == doctest::Approx(0.375));
  CHECK(pb::pmf(V{1, 1, 0}, 2) == doctest::Approx(1.0));
  const V z{0.2, 0.5, 0.9};
  // hand enumeration of exactly one success
  const double one = 0.2 * 0.5 * 0.1 + 0.8 * 0.5 * 0.1 + 0.8 * 0.5 * 0.9;
  CHECK(pb::pmf(z, 1) == doctest::Approx(one).epsilon(1e-14));
  CHECK_THROWS(pb::pmf(z, 4));
  CHECK(pb::tail_at_least(z, 2) == doctest::Approx(1.0 - pb::pmf(z, 0) - one));
}

TEST_CASE("pmf agrees with enumeration on random vectors") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 12; ++n)
    for (int rep = 0; rep < 50; ++rep) {
      V z(n);
      for (auto& x : z) x = u(g);
      const auto f = pb::pmf_table(z);
      const auto e = pb::pmf_enumerate(z);
      double s = 0.0;
      for (int r = 0; r <= n; ++r) {
        CHECK(std::abs(f[r] - e[r]) < 1e-12);
        s += f[r];
      }
      CHECK(std::abs(s - 1.0) < 1e-12);
    }
}

TEST_CASE("modes") {
  CHECK(pb::modes(V{0.5, 0.5, 0.5}) == std::vector<int>{1, 2});
  CHECK(pb::modes(V{1, 1, 1}) == std::vector<int>{3});
  const V z{0.9, 0.9, 0.9};
  const auto m = pb::modes(z);
  const auto f = pb::pmf_table(z);
  REQUIRE(m.size() == 1);
  CHECK((m[0] == 2 || m[0] == 3));
  CHECK(f[m[0]] == doctest::Approx(std::max(f[2], f[3])));
  const auto br = pb::mode_bracket(z);
  CHECK(br.mean == doctest::Approx(2.7));
  CHECK(br.frac == doctest::Approx(0.7));
  CHECK(pb::modes_consistent(z));
  // fractional part below 1/(N+1) forces floor(mean)
  const V low{0.05, 0.05, 0.95, 0.95};
  CHECK(pb::mode_bracket(low).unique_required);
  CHECK(pb::modes(low) == std::vector<int>{2});
}

TEST_CASE("pivotal probability") {
  CHECK(pb::pivotal_prob(V{1, 1, 1}, 0, 1) == doctest::Approx(0.0));
  CHECK(pb::pivotal_prob(V{0.3, 0.5, 0.5}, 0, 1) == doctest::Approx(0.5));
  // tau-mixtures of informative voters in state h: accept prob tau each
  const double t = 0.9;
  const V z{t, t, t};
  double brute = 0.0;  // others 1 and 2, exactly one accepts
  brute += t * (1 - t) + (1 - t) * t;
  CHECK(pb::pivotal_prob(z, 0, 1) == doctest::Approx(brute));
}

TEST_CASE("ranking examples and preconditions") {
  auto r = pb::verify_ranking(V{0.9, 0.9, 0.9}, V{0.95, 0.95, 0.95}, 2, 0.2);
  CHECK(r.a_applies);
  CHECK(r.ok());
  r = pb::verify_ranking(V{0.1, 0.1, 0.1}, V{0.3, 0.3, 0.3}, 2, 0.1);
  CHECK(r.b_applies);
  CHECK(r.ok());
  r = pb::verify_ranking(V{0.4, 0.7}, V{0.4, 0.7}, 1, 0.1);
  CHECK(r.ok());
  CHECK_THROWS_AS(pb::verify_ranking(V{0.5, 0.5}, V{0.4, 0.5}, 1, 0.1), Error);
  CHECK_THROWS_AS(pb::verify_ranking(V{0.5, 0.5}, V{0.6, 0.5}, 1, 0.4), Error);
}

TEST_CASE("random trial suites are deterministic across serial and parallel runs") {
  const auto a = pb_exactness_trials(3, 8, 100, true);
  const auto b = pb_exactness_trials(3, 8, 100, false);
  CHECK(a.ok());
  CHECK(a.max_error == b.max_error);
  const auto c = ranking_trials(5, 2000, 10, true);
  const auto d = ranking_trials(5, 2000, 10, false);
  CHECK(c.ok());
  CHECK(c.applies_a == d.applies_a);
  CHECK(c.applies_b == d.applies_b);
  CHECK(c.applies_a > 0);
  CHECK(c.applies_b > 0);
}
