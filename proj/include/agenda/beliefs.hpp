#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agenda/model.hpp"
#include "agenda/strategy.hpp"

namespace agenda {

inline constexpr double kZeroLikelihood = 1e-30;

using VoteProfile = std::vector<int>;

bool is_accepted(const VoteProfile& a, int quota);
std::uint32_t to_mask(const VoteProfile& a);
VoteProfile from_mask(std::uint32_t mask, int n);

// mu(h | s) for a signal of precision tau
double signal_posterior(double mu, Signal s, double tau);

// Posterior after vote mask given state-wise composite acceptance
// probabilities; zero-likelihood records leave mu unchanged.
double public_update(double mu, std::uint32_t mask,
                     std::span<const double> alpha_low,
                     std::span<const double> alpha_high);

double public_update(const ModelParams& params, double mu, double p,
                     const VoteProfile& a, const StrategyProfile& profile);

bool check_monotone(const ModelParams& params, const StrategyProfile& profile,
                    double p, double mu);

}  // namespace agenda
