#include "agenda/beliefs.hpp"

#include <bit>

namespace agenda {

bool is_accepted(const VoteProfile& a, int quota) {
  int yes = 0;
  for (int v : a) yes += v != 0;
  return yes >= quota;
}

std::uint32_t to_mask(const VoteProfile& a) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) m |= 1u << i;
  return m;
}

VoteProfile from_mask(std::uint32_t mask, int n) {
  VoteProfile a(n);
  for (int i = 0; i < n; ++i) a[i] = (mask >> i) & 1u;
  return a;
}

double signal_posterior(double mu, Signal s, double tau) {
  const double lh = s == Signal::H ? tau : 1.0 - tau;  // P(s | h)
  const double ll = 1.0 - lh;                          // P(s | l)
  const double num = mu * lh;
  const double den = num + (1.0 - mu) * ll;
  return den > 0.0 ? num / den : mu;
}

double public_update(double mu, std::uint32_t mask,
                     std::span<const double> alpha_low,
                     std::span<const double> alpha_high) {
  double lh = mu, ll = 1.0 - mu;
  for (std::size_t i = 0; i < alpha_low.size(); ++i) {
    const bool yes = (mask >> i) & 1u;
    lh *= yes ? alpha_high[i] : 1.0 - alpha_high[i];
    ll *= yes ? alpha_low[i] : 1.0 - alpha_low[i];
  }
  const double tot = lh + ll;
  if (!(tot >= kZeroLikelihood)) return mu;
  return lh / tot;
}

double public_update(const ModelParams& params, double mu, double p,
                     const VoteProfile& a, const StrategyProfile& profile) {
  const auto al = composite_acceptance_all(params, profile, p, State::low, mu);
  const auto ah = composite_acceptance_all(params, profile, p, State::high, mu);
  return public_update(mu, to_mask(a), al, ah);
}

bool check_monotone(const ModelParams& params, const StrategyProfile& profile,
                    double p, double mu) {
  for (int i = 0; i < params.n_voters; ++i)
    if (profile.acceptance(i, Signal::H, mu, p) <
        profile.acceptance(i, Signal::L, mu, p))
      return false;
  return true;
}

double signal_prob(const ModelParams& params, int i, Signal s, State w) {
  const double t = params.precisions[i];
  const bool match = (s == Signal::H) == (w == State::high);
  return match ? t : 1.0 - t;
}

double composite_acceptance(const ModelParams& params,
                            const StrategyProfile& profile, int i, double p,
                            State w, double mu) {
  return signal_prob(params, i, Signal::L, w) *
             profile.acceptance(i, Signal::L, mu, p) +
         signal_prob(params, i, Signal::H, w) *
             profile.acceptance(i, Signal::H, mu, p);
}

std::vector<double> composite_acceptance_all(const ModelParams& params,
                                             const StrategyProfile& profile,
                                             double p, State w, double mu) {
  std::vector<double> out(params.n_voters);
  for (int i = 0; i < params.n_voters; ++i)
    out[i] = composite_acceptance(params, profile, i, p, w, mu);
  return out;
}

}  // namespace agenda
