#pragma once

#include <span>
#include <vector>

namespace agenda::pb {

// f(.|z) for r = 0..N, built by adding one trial at a time.
std::vector<double> pmf_table(std::span<const double> z);

double pmf(std::span<const double> z, int r);

// P(Y >= r)
double tail_at_least(std::span<const double> z, int r);

// argmax set of the pmf; entries within tol of the maximum count as ties
std::vector<int> modes(std::span<const double> z, double tol = 1e-12);

// Which modes the Darroch/Samuels characterization allows for sum(z).
struct ModeBracket {
  double mean = 0.0;
  double frac = 0.0;
  std::vector<int> allowed;
  bool unique_required = false;
};
ModeBracket mode_bracket(std::span<const double> z, double tol = 1e-12);

// Modes lie in the bracket, are consecutive, and the pmf is strictly
// increasing below the lowest and strictly decreasing above the highest.
bool modes_consistent(std::span<const double> z, double tol = 1e-12);

// P_i(r | w): pmf of the other voters' accept count, evaluated at r.
double pivotal_prob(std::span<const double> accept_probs, int i, int r);

struct RankingResult {
  bool a_applies = false;
  bool a_holds = true;
  bool b_applies = false;
  bool b_holds = true;
  bool ok() const { return a_holds && b_holds; }
};

// z <= z' pointwise and eps in (0, 1/(N+1)); violations throw
// Error(precondition). q is 1-based as in the quota rule.
RankingResult verify_ranking(std::span<const double> z,
                             std::span<const double> zp, int q, double eps,
                             double tol = 1e-12);

// Brute-force pmf over all 2^N outcomes. Test oracle, N <= 20.
std::vector<double> pmf_enumerate(std::span<const double> z);

}  // namespace agenda::pb
