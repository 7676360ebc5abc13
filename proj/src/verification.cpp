#include "agenda/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "agenda/game_engine.hpp"
#include "agenda/poisson_binomial.hpp"

namespace agenda {

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t s) : g(s) {}
  double uniform() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  int below(int n) { return static_cast<int>(uniform() * n); }
};

// Mixture that puts mass near 0, near 1 and in the interior.
double draw_prob(Rng& rng) {
  const double u = rng.uniform();
  const double v = rng.uniform();
  if (u < 0.15) return v * 1e-3;
  if (u < 0.30) return 1.0 - v * 1e-3;
  return v;
}

struct TrialOutcome {
  bool fail = false;
  bool a = false, b = false;
  double err = 0.0;
  std::string what;
};

template <class F>
TrialReport run_trials(std::int64_t n, bool parallel, F&& trial) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = trial(k);
  TrialReport rep;
  rep.trials = n;
  for (const auto& o : out) {
    rep.max_error = std::max(rep.max_error, o.err);
    rep.applies_a += o.a;
    rep.applies_b += o.b;
    if (o.fail) {
      if (rep.failures == 0) rep.first_failure = o.what;
      ++rep.failures;
    }
  }
  return rep;
}

std::string describe(const std::vector<double>& z) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t k = 0; k < z.size(); ++k) os << (k ? "," : "") << z[k];
  os << ")";
  return os.str();
}

}  // namespace

TrialReport pb_exactness_trials(std::uint64_t seed, int max_n, int per_size,
                                bool parallel) {
  const std::int64_t total = static_cast<std::int64_t>(max_n) * per_size;
  return run_trials(total, parallel, [&](std::int64_t k) {
    Rng rng(episode_seed(seed, static_cast<std::uint64_t>(k)));
    const int n = static_cast<int>(k / per_size) + 1;
    std::vector<double> z(n);
    for (auto& x : z) x = draw_prob(rng);
    TrialOutcome o;
    const auto f = pb::pmf_table(z);
    const auto g = pb::pmf_enumerate(z);
    for (int r = 0; r <= n; ++r) o.err = std::max(o.err, std::abs(f[r] - g[r]));
    const double total_mass = std::accumulate(f.begin(), f.end(), 0.0);
    o.err = std::max(o.err, std::abs(total_mass - 1.0));
    const bool modes_ok = pb::modes_consistent(z);
    if (o.err > 1e-12 || !modes_ok) {
      o.fail = true;
      o.what = (modes_ok ? "pmf mismatch at z=" : "mode check failed at z=") +
               describe(z);
    }
    return o;
  });
}

TrialReport ranking_trials(std::uint64_t seed, int trials, int max_n,
                           bool parallel) {
  return run_trials(trials, parallel, [&](std::int64_t k) {
    Rng rng(episode_seed(seed, static_cast<std::uint64_t>(k)));
    TrialOutcome o;
    for (;;) {
      const int n = 1 + rng.below(max_n);
      std::vector<double> z(n), zp(n);
      for (int j = 0; j < n; ++j) {
        z[j] = draw_prob(rng);
        zp[j] = z[j] + rng.uniform() * (1.0 - z[j]);
      }
      const double eps = (0.001 + 0.998 * rng.uniform()) / (n + 1);
      const double sz = std::accumulate(z.begin(), z.end(), 0.0);
      const double szp = std::accumulate(zp.begin(), zp.end(), 0.0);
      // aim the quota at one of the two conclusions
      int q = rng.uniform() < 0.5 ? static_cast<int>(std::floor(sz + eps))
                                  : static_cast<int>(std::ceil(szp - eps + 1.0));
      q = std::clamp(q, 1, n);
      const auto r = pb::verify_ranking(z, zp, q, eps);
      if (!r.a_applies && !r.b_applies) continue;
      o.a = r.a_applies;
      o.b = r.b_applies;
      if (!r.ok()) {
        o.fail = true;
        std::ostringstream os;
        os << "q=" << q << " eps=" << eps << " z=" << describe(z)
           << " z'=" << describe(zp);
        o.what = os.str();
      }
      return o;
    }
  });
}

}  // namespace agenda
