#include "agenda/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "agenda/benchmarks.hpp"

namespace agenda {

const char* to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::full_extraction: return "FullExtraction";
    case RegimeKind::partial_screening: return "PartialScreening";
    case RegimeKind::coase: return "Coase";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::valuable: return "valuable";
    case Verdict::harmful: return "harmful";
    case Verdict::equal: return "equal";
  }
  return "?";
}

Regime classify_regime(const ModelParams& params, int informed) {
  if (informed < 0 || informed > params.decisive())
    throw Error(ErrorCode::precondition, "informed voter must satisfy i <= q");
  const int q = params.decisive();
  const double yl = params.reservation_low[q], yh = params.reservation_high[q];
  const double gap = params.reservation_high[informed] - yl;
  Regime r;
  r.informed = informed;
  r.boundary = gap == yl || gap == yh;
  if (gap <= yl) {
    r.kind = RegimeKind::coase;
    r.limit_policy = yl;
  } else if (gap >= yh) {
    r.kind = RegimeKind::full_extraction;
    r.limit_policy = yh;
  } else {
    r.kind = RegimeKind::partial_screening;
    r.limit_policy = gap;
  }
  return r;
}

double setter_limit_value(const ModelParams& params, const Regime& regime,
                          double mu) {
  const double yl = params.reservation_low[params.decisive()];
  return yl + mu * (regime.limit_policy - yl);
}

double tioli_limit(const ModelParams& params, double mu) {
  const int q = params.decisive();
  const double yl = params.reservation_low[q];
  return yl + std::max(0.0, mu * params.reservation_high[q] - yl);
}

QuotaComparison quota_comparison(const ModelParams& params, int q, int qt,
                                 int informed, double mu) {
  require_strict_ordering(params);
  if (!(1 <= q && q < qt && qt <= params.n_voters))
    throw Error(ErrorCode::precondition, "need 1 <= q < q~ <= N");
  ModelParams pq = params, pqt = params;
  pq.quota = q;
  pqt.quota = qt;
  const Regime rq = classify_regime(pq, informed);
  if (rq.kind != RegimeKind::partial_screening || rq.boundary)
    throw Error(ErrorCode::precondition,
                "quota comparison needs partial screening at the lower quota");
  const Regime rqt = classify_regime(pqt, informed);

  QuotaComparison out;
  out.value_q = setter_limit_value(pq, rq, mu);
  out.value_qt = setter_limit_value(pqt, rqt, mu);
  const double diff = out.value_qt - out.value_q;
  out.better = std::abs(diff) <= 1e-12 ? 0 : (diff > 0 ? 1 : -1);

  const double ylq = params.reservation_low[q - 1];
  const double ylt = params.reservation_low[qt - 1];
  const double yht = params.reservation_high[qt - 1];
  const double yhi = params.reservation_high[informed];
  int predicted;
  if (yhi - ylt <= yht) {
    out.threshold = 0.5;
  } else {
    const double den = 2.0 * ylq + yht - yhi - ylt;
    if (den > 0.0) {
      out.threshold = (ylq - ylt) / den;
    } else {
      out.threshold_defined = false;
    }
  }
  if (out.threshold_defined) {
    out.boundary = std::abs(mu - out.threshold) <= 1e-12;
    predicted = out.boundary ? 0 : (mu > out.threshold ? 1 : -1);
  } else {
    predicted = mu >= 1.0 ? 0 : -1;
  }
  out.consistent = predicted == out.better || (out.boundary && out.better == 0);
  return out;
}

RevisionComparison revision_value(const ModelParams& params, int informed,
                                  double mu, PrecisionCase pc) {
  const int q = params.decisive();
  const double yl = params.reservation_low[q], yh = params.reservation_high[q];
  RevisionComparison out;
  out.take_it_or_leave_it = tioli_limit(params, mu);
  if (pc == PrecisionCase::equal_precision) {
    out.with_revisions = complete_info_value(params, mu);
  } else {
    const Regime r = classify_regime(params, informed);
    out.with_revisions = setter_limit_value(params, r, mu);
    if (r.kind == RegimeKind::partial_screening) {
      out.has_threshold = true;
      out.threshold = yl / (2.0 * yl - params.reservation_high[informed] + yh);
    } else if (r.kind == RegimeKind::coase) {
      out.has_threshold = true;
      out.threshold = yl / yh;
    }
  }
  const double d = out.with_revisions - out.take_it_or_leave_it;
  out.verdict = std::abs(d) <= 1e-12 ? Verdict::equal
                : d > 0             ? Verdict::valuable
                                    : Verdict::harmful;
  return out;
}

std::vector<RegionPoint> region_sweep(const ModelParams& params, int informed,
                                      double yh_lo, double yh_hi, int n_y,
                                      int n_mu, bool parallel) {
  if (n_y < 1 || n_mu < 2)
    throw Error(ErrorCode::precondition, "region sweep needs n_y >= 1, n_mu >= 2");
  const int q = params.decisive();
  const double yl = params.reservation_low[q], yh = params.reservation_high[q];
  std::vector<double> ys;
  for (int k = 0; k < n_y; ++k)
    ys.push_back(n_y == 1 ? yh_lo : yh_lo + (yh_hi - yh_lo) * k / (n_y - 1));
  // the exact thresholds belong on the grid when they fall inside it
  for (double t : {2.0 * yl, yh + yl})
    if (t >= yh_lo && t <= yh_hi) ys.push_back(t);
  std::sort(ys.begin(), ys.end());

  std::vector<RegionPoint> out(ys.size() * static_cast<std::size_t>(n_mu));
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
  for (std::size_t a = 0; a < ys.size(); ++a) {
    for (int b = 0; b < n_mu; ++b) {
      ModelParams p = params;
      p.reservation_high[informed] = ys[a];
      RegionPoint& pt = out[a * n_mu + b];
      pt.informed_high = ys[a];
      pt.mu = static_cast<double>(b) / (n_mu - 1);
      pt.regime = classify_regime(p, informed);
      const auto rv = revision_value(p, informed, pt.mu);
      pt.with_revisions = rv.with_revisions;
      pt.take_it_or_leave_it = rv.take_it_or_leave_it;
      pt.verdict = rv.verdict;

      // regime conditions restated directly
      const double gap = ys[a] - yl;
      const RegimeKind expect = gap <= yl   ? RegimeKind::coase
                                : gap >= yh ? RegimeKind::full_extraction
                                            : RegimeKind::partial_screening;
      const double top = std::max(yl, std::min(yh, gap));
      const double v_direct = pt.mu * top + (1.0 - pt.mu) * yl;
      const double v_tioli = std::max(yl, pt.mu * yh);
      const double d = v_direct - v_tioli;
      const Verdict v_expect = std::abs(d) <= 1e-12 ? Verdict::equal
                               : d > 0             ? Verdict::valuable
                                                   : Verdict::harmful;
      pt.consistent = pt.regime.kind == expect &&
                      std::abs(pt.with_revisions - v_direct) <= 1e-12 &&
                      std::abs(pt.take_it_or_leave_it - v_tioli) <= 1e-12 &&
                      pt.verdict == v_expect;
    }
  }
  return out;
}

}  // namespace agenda
