#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "agenda/analysis.hpp"
#include "agenda/benchmarks.hpp"
#include "agenda/error.hpp"

using namespace agenda;

TEST_CASE("regime classification") {
  auto P = canonical_params();
  auto r = classify_regime(P, 0);
  CHECK(r.kind == RegimeKind::partial_screening);
  CHECK(r.limit_policy == doctest::Approx(2.0));
  P.reservation_high[0] = 5.0;
  r = classify_regime(P, 0);
  CHECK(r.kind == RegimeKind::full_extraction);
  CHECK(r.limit_policy == doctest::Approx(2.8));
  P.reservation_high[0] = 1.8;
  r = classify_regime(P, 0);
  CHECK(r.kind == RegimeKind::coase);
  CHECK(r.limit_policy == doctest::Approx(1.0));
}

TEST_CASE("classification flips across each threshold") {
  auto P = canonical_params();
  for (double edge : {2.0, 3.8}) {  // gap = y_q^l and gap = y_q^h
    P.reservation_high[0] = edge;
    CHECK(classify_regime(P, 0).boundary);
    P.reservation_high[0] = edge - 1e-6;
    const auto below = classify_regime(P, 0).kind;
    P.reservation_high[0] = edge + 1e-6;
    const auto above = classify_regime(P, 0).kind;
    CHECK(below != above);
  }
}

TEST_CASE("setter limit value") {
  auto P = canonical_params();
  CHECK(setter_limit_value(P, classify_regime(P, 0), 0.5) == doctest::Approx(1.5));
  P.reservation_high[0] = 1.8;
  for (double mu : {0.0, 0.3, 0.9})
    CHECK(setter_limit_value(P, classify_regime(P, 0), mu) == doctest::Approx(1.0));
  P.reservation_high[0] = 5.0;
  CHECK(setter_limit_value(P, classify_regime(P, 0), 1.0) == doctest::Approx(2.8));
  CHECK(tioli_limit(P, 0.5) == doctest::Approx(1.4));
  CHECK(tioli_limit(P, 0.2) == doctest::Approx(1.0));
}

TEST_CASE("quota comparison example") {
  const auto P = canonical_params();
  auto c = quota_comparison(P, 2, 3, 0, 0.8);
  CHECK(c.value_q == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(c.value_qt == doctest::Approx(1.86).epsilon(1e-14));
  CHECK(c.better == 1);
  CHECK(std::abs(c.threshold - 0.5 / 0.7) < 1e-12);
  CHECK(c.consistent);
  c = quota_comparison(P, 2, 3, 0, 0.5);
  CHECK(c.better == -1);
  CHECK(c.consistent);
  c = quota_comparison(P, 2, 3, 0, 0.5 / 0.7);
  CHECK(std::abs(c.value_q - c.value_qt) < 1e-9);
  CHECK(c.boundary);
}

TEST_CASE("quota comparison rejects the wrong regime") {
  auto P = canonical_params();
  P.reservation_high[0] = 5.0;
  CHECK_THROWS_AS(quota_comparison(P, 2, 3, 0, 0.5), Error);
}

TEST_CASE("threshold test agrees with direct comparison on random draws") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    ModelParams P = canonical_params();
    // decreasing reservations, y^h > y^l for each voter
    double a = 0.2 + 3 * U(rng), b = a * U(rng), c = b * U(rng);
    P.reservation_low = {a, b, c};
    double hb = b + 3 * U(rng), hc = c + (hb - c) * U(rng);
    P.reservation_high = {0, hb, hc};
    P.reservation_high[0] = std::max(hb, a) + 3 * U(rng) + 1e-3;
    if (!(P.reservation_high[0] > hb && hb > hc && a > b && b > c)) continue;
    const auto r = classify_regime(P, 0);
    if (r.kind != RegimeKind::partial_screening || r.boundary) continue;
    const auto cmp = quota_comparison(P, 2, 3, 0, U(rng));
    CHECK(cmp.consistent);
    ++tested;
  }
}

TEST_CASE("revision value") {
  const auto P = canonical_params();
  auto r = revision_value(P, 0, 0.4);
  CHECK(r.verdict == Verdict::valuable);
  CHECK(r.threshold == doctest::Approx(1 / 1.8).epsilon(1e-14));
  r = revision_value(P, 0, 0.8);
  CHECK(r.verdict == Verdict::harmful);
  r = revision_value(P, 0, 1 / 1.8);
  CHECK(std::abs(r.with_revisions - r.take_it_or_leave_it) < 1e-12);
  CHECK(revision_value(P, 0, 1 / 1.8 - 1e-9).verdict == Verdict::valuable);
  CHECK(revision_value(P, 0, 1 / 1.8 + 1e-9).verdict == Verdict::harmful);
  for (double mu : {0.01, 0.3, 0.5, 0.7, 0.99})
    CHECK(revision_value(P, 0, mu, PrecisionCase::equal_precision).verdict == Verdict::valuable);
}

TEST_CASE("verdicts follow the sign of the value difference") {
  auto P = canonical_params();
  for (double yh : {1.8, 3.0, 5.0}) {
    P.reservation_high[0] = yh;
    for (int k = 0; k <= 100; ++k) {
      const double mu = k / 100.0;
      const auto r = revision_value(P, 0, mu);
      const double d = r.with_revisions - r.take_it_or_leave_it;
      if (d > 1e-12) CHECK(r.verdict == Verdict::valuable);
      if (d < -1e-12) CHECK(r.verdict == Verdict::harmful);
    }
  }
}

TEST_CASE("region sweep is internally consistent") {
  const auto pts = region_sweep(canonical_params(), 0, 1.0, 6.0, 101, 101);
  CHECK(pts.size() >= 101u * 101u);
  for (const auto& p : pts) CHECK(p.consistent);
}
