#include "agenda/poisson_binomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "agenda/error.hpp"

namespace agenda::pb {

std::vector<double> pmf_table(std::span<const double> z) {
  std::vector<double> f(z.size() + 1, 0.0);
  f[0] = 1.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double zi = z[k];
    for (std::size_t r = k + 1; r >= 1; --r)
      f[r] = zi * f[r - 1] + (1.0 - zi) * f[r];
    f[0] *= 1.0 - zi;
  }
  return f;
}

double pmf(std::span<const double> z, int r) {
  if (r < 0 || r > static_cast<int>(z.size()))
    throw Error(ErrorCode::precondition, "pmf: r out of range");
  return pmf_table(z)[r];
}

double tail_at_least(std::span<const double> z, int r) {
  if (r <= 0) return 1.0;
  const auto f = pmf_table(z);
  if (r >= static_cast<int>(f.size())) return 0.0;
  // sum the smaller side to limit cancellation
  return std::accumulate(f.begin() + r, f.end(), 0.0);
}

std::vector<int> modes(std::span<const double> z, double tol) {
  const auto f = pmf_table(z);
  const double top = *std::max_element(f.begin(), f.end());
  std::vector<int> out;
  for (int r = 0; r < static_cast<int>(f.size()); ++r)
    if (f[r] >= top - tol) out.push_back(r);
  return out;
}

ModeBracket mode_bracket(std::span<const double> z, double tol) {
  ModeBracket b;
  const double n = static_cast<double>(z.size());
  b.mean = std::accumulate(z.begin(), z.end(), 0.0);
  const double fl = std::floor(b.mean);
  b.frac = b.mean - fl;
  const int m = static_cast<int>(fl);
  const double lo = 1.0 / (n + 1.0), hi = n / (n + 1.0);
  if (b.frac < tol) {
    b.allowed = {m};
    b.unique_required = true;
  } else if (b.frac > 1.0 - tol) {
    b.allowed = {m + 1};
    b.unique_required = true;
  } else if (b.frac < lo - tol) {
    b.allowed = {m};
    b.unique_required = true;
  } else if (b.frac > hi + tol) {
    b.allowed = {m + 1};
    b.unique_required = true;
  } else {
    b.allowed = {m, m + 1};
  }
  return b;
}

bool modes_consistent(std::span<const double> z, double tol) {
  const auto f = pmf_table(z);
  const auto md = modes(z, tol);
  if (md.empty() || md.size() > 2) return false;
  if (md.size() == 2 && md[1] != md[0] + 1) return false;
  const auto b = mode_bracket(z, tol);
  for (int r : md)
    if (std::find(b.allowed.begin(), b.allowed.end(), r) == b.allowed.end())
      return false;
  if (b.unique_required && md.size() != 1) return false;
  for (int r = 0; r < md.front(); ++r) {
    if (f[r] == 0.0 && f[r + 1] == 0.0) continue;  // outside the support
    if (!(f[r] < f[r + 1])) return false;
  }
  for (int r = md.back(); r + 1 < static_cast<int>(f.size()); ++r) {
    if (f[r] == 0.0 && f[r + 1] == 0.0) continue;
    if (!(f[r] > f[r + 1])) return false;
  }
  return true;
}

double pivotal_prob(std::span<const double> accept_probs, int i, int r) {
  std::vector<double> others;
  others.reserve(accept_probs.size());
  for (int j = 0; j < static_cast<int>(accept_probs.size()); ++j)
    if (j != i) others.push_back(accept_probs[j]);
  if (r < 0 || r > static_cast<int>(others.size())) return 0.0;
  return pmf_table(others)[r];
}

RankingResult verify_ranking(std::span<const double> z,
                             std::span<const double> zp, int q, double eps,
                             double tol) {
  const int n = static_cast<int>(z.size());
  if (static_cast<int>(zp.size()) != n || n == 0)
    throw Error(ErrorCode::precondition, "ranking: length mismatch");
  if (q < 1 || q > n)
    throw Error(ErrorCode::precondition, "ranking: q out of range");
  if (!(eps > 0.0 && eps < 1.0 / (n + 1)))
    throw Error(ErrorCode::precondition, "ranking: eps must lie in (0,1/(N+1))");
  for (int k = 0; k < n; ++k) {
    if (z[k] < 0.0 || zp[k] > 1.0 || z[k] > zp[k])
      throw Error(ErrorCode::precondition, "ranking: need 0 <= z <= z' <= 1");
  }
  const auto f = pmf_table(z);
  const auto g = pmf_table(zp);
  const double sz = std::accumulate(z.begin(), z.end(), 0.0);
  const double szp = std::accumulate(zp.begin(), zp.end(), 0.0);
  RankingResult out;
  out.a_applies = sz >= q - eps;
  if (out.a_applies) out.a_holds = f[q - 1] >= g[q - 1] - tol;
  out.b_applies = szp <= q - 1 + eps;
  if (out.b_applies) out.b_holds = f[q] <= g[q] + tol;
  return out;
}

std::vector<double> pmf_enumerate(std::span<const double> z) {
  const int n = static_cast<int>(z.size());
  if (n > 20) throw Error(ErrorCode::precondition, "enumeration limited to 20");
  std::vector<double> f(n + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    for (int k = 0; k < n; ++k)
      prob *= (mask >> k & 1u) ? z[k] : 1.0 - z[k];
    f[std::popcount(mask)] += prob;
  }
  return f;
}

}  // namespace agenda::pb
