#include "commands.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>

#include "agenda/analysis.hpp"
#include "agenda/benchmarks.hpp"
#include "agenda/game_engine.hpp"
#include "agenda/pooling.hpp"
#include "agenda/screening.hpp"
#include "agenda/verification.hpp"

namespace agenda::cli {

using nlohmann::json;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

EngineOptions engine_opts(const Config& c) {
  EngineOptions e;
  e.max_periods = c.tolerances.max_periods;
  e.residual_tol = c.tolerances.residual;
  return e;
}

int pool_size(const Config& c) {
  return c.tolerances.threads > 0 ? c.tolerances.threads : omp_get_max_threads();
}

// Evaluates f(k) for k = 0..n-1 on a bounded pool; results keep grid order.
// An exception at one point is stored as its message and does not stop the rest.
template <class T>
std::vector<std::pair<T, std::string>> grid_map(int n, int threads,
                                                const std::function<T(int)>& f) {
  std::vector<std::pair<T, std::string>> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int k = 0; k < n; ++k) {
    try {
      out[k].first = f(k);
    } catch (const std::exception& e) {
      out[k].second = e.what();
    }
  }
  return out;
}

json payoffs_json(const Payoffs& p) {
  json v = json::array();
  for (const auto& a : p.voter) v.push_back({{"L", a[0]}, {"H", a[1]}});
  return {{"proposer", p.proposer}, {"voter", v}, {"truncation_bound", p.truncation_bound}};
}

Report run_benchmark(const Config& c) {
  const auto& P = c.model;
  TioliOptions to;
  to.tol = c.tolerances.tol;
  const auto tv = tioli_value(P, P.prior_high, to);
  const auto eq = tioli_equilibrium(P, P.prior_high, tv.proposal, to);
  Report r;
  r.body = {{"complete_info_value", complete_info_value(P, P.prior_high)},
            {"tioli_value", tv.value},
            {"tioli_proposal", tv.proposal},
            {"tioli_accept_low", tv.accept_low},
            {"tioli_accept_high", tv.accept_high},
            {"tioli_candidates", tv.candidates},
            {"tioli_limit_value", tioli_limit_value(P, P.prior_high)},
            {"equilibrium_iterations", eq.iterations},
            {"equilibrium_converged", eq.converged},
            {"ranking_checks_hold", eq.ranking_ok}};
  Table t{{"voter", "accept_L", "accept_H"}, {}};
  for (std::size_t i = 0; i < eq.accept.size(); ++i)
    t.rows.push_back({std::to_string(i), fmt(eq.accept[i][0]), fmt(eq.accept[i][1])});
  r.table = t;
  return r;
}

Report run_screening(const Config& c) {
  const auto& P = c.model;
  ScreeningOptions so;
  so.tol = c.tolerances.tol;
  so.engine = engine_opts(c);
  const auto path = screening_sequence(P, c.task.informed, P.prior_high, so);
  const auto chk = check_screening_path(P, path, so.engine);
  const auto reg = classify_regime(P, c.task.informed);
  Report r;
  r.body = {{"informed", c.task.informed},
            {"length", path.length()},
            {"policies", path.policies},
            {"cutoffs", path.cutoffs},
            {"accept_probs", path.accept_probs},
            {"beliefs", path.beliefs},
            {"exact_value", chk.exact_value},
            {"limit_value", screening_limit_value(P, c.task.informed, P.prior_high)},
            {"regime", to_string(reg.kind)},
            {"max_indifference_residual", chk.max_indifference},
            {"max_bayes_residual", chk.max_bayes},
            {"max_deviation_gain", chk.max_deviation}};
  Table t{{"step", "belief", "policy", "cutoff", "accept_prob"}, {}};
  for (int k = 0; k < path.length(); ++k)
    t.rows.push_back({std::to_string(k + 1), fmt(path.beliefs[k]), fmt(path.policies[k]),
                      fmt(path.cutoffs[k]), fmt(path.accept_probs[k])});
  r.table = t;
  return r;
}

Report run_pooling(const Config& c) {
  const auto sol = solve_tilde_p(c.model, c.model.prior_high);
  const auto prof = build_pooling_profile(sol);
  const auto eo = engine_opts(c);
  const auto pay = evaluate_profile(sol.params, prof, sol.prior, eo);
  Table t{{"belief", "voter", "signal", "action", "gain"}, {}};
  double worst = -1e300;
  for (double mu : {sol.prior, sol.fallback_belief}) {
    const double p = prof.proposal(mu).front().policy;
    for (int i = 0; i < sol.params.n_voters; ++i)
      for (Signal s : kSignals)
        for (bool acc : {false, true}) {
          const double g = deviation_gain(sol.params, prof, i, s, mu, p, acc, eo);
          worst = std::max(worst, g);
          t.rows.push_back({fmt(mu), std::to_string(i), s == Signal::H ? "H" : "L",
                            acc ? "accept" : "reject", fmt(g)});
        }
  }
  json res = json::array();
  for (const auto& x : sol.residuals)
    res.push_back({{"voter", x.voter}, {"low_signal", x.low_signal},
                   {"high_signal", x.high_signal}, {"high_direct", x.high_direct}});
  Report r;
  r.body = {{"tilde_p", sol.tilde_p},
            {"fallback_p", sol.fallback_p},
            {"fallback_belief", sol.fallback_belief},
            {"binding", to_string(sol.binding)},
            {"residuals", res},
            {"continuation", sol.continuation},
            {"warnings", sol.warnings},
            {"exact_value", pay.proposer},
            {"complete_info_value", complete_info_value(sol.params, sol.prior)},
            {"max_deviation_gain", worst}};
  r.table = t;
  return r;
}

Report run_analysis(const Config& c) {
  const auto& P = c.model;
  const int i = c.task.informed;
  const auto reg = classify_regime(P, i);
  const auto pc = c.task.precision_case == "equal_precision" ? PrecisionCase::equal_precision
                                                             : PrecisionCase::informed_voter;
  if (c.task.precision_case != "equal_precision" && c.task.precision_case != "informed_voter")
    throw ConfigError("task.precision_case must be informed_voter or equal_precision");
  const auto rv = revision_value(P, i, P.prior_high, pc);
  Report r;
  r.body = {{"regime", to_string(reg.kind)},
            {"boundary", reg.boundary},
            {"limit_policy", reg.limit_policy},
            {"limit_value", setter_limit_value(P, reg, P.prior_high)},
            {"with_revisions", rv.with_revisions},
            {"take_it_or_leave_it", rv.take_it_or_leave_it},
            {"verdict", to_string(rv.verdict)}};
  if (rv.has_threshold) r.body["verdict_threshold"] = rv.threshold;
  if (c.task.quota_high > 0) {
    const auto qc = quota_comparison(P, P.quota, c.task.quota_high, i, P.prior_high);
    r.body["quota_comparison"] = {{"value_q", qc.value_q},
                                  {"value_q_high", qc.value_qt},
                                  {"better", qc.better},
                                  {"threshold_defined", qc.threshold_defined},
                                  {"threshold", qc.threshold},
                                  {"boundary", qc.boundary},
                                  {"consistent", qc.consistent}};
  }
  return r;
}

StrategyProfile profile_for(const Config& c, ModelParams& used) {
  if (c.task.profile == "screening") {
    ScreeningOptions so;
    so.engine = engine_opts(c);
    const auto path = screening_sequence(c.model, c.task.informed, c.model.prior_high, so);
    used = c.model;
    return build_screening_profile(c.model, path);
  }
  if (c.task.profile == "pooling") {
    const auto sol = solve_tilde_p(c.model, c.model.prior_high);
    used = sol.params;
    return build_pooling_profile(sol);
  }
  throw ConfigError("task.profile must be screening or pooling");
}

Report run_simulate(const Config& c) {
  ModelParams P;
  const auto prof = profile_for(c, P);
  const auto exact = evaluate_profile(P, prof, P.prior_high, engine_opts(c));
  SimulationOptions so;
  so.seed = c.task.seed;
  so.episodes = c.task.episodes;
  so.max_periods = c.tolerances.max_periods;
  const auto sim = simulate(P, prof, so);
  auto z = [](double emp, double ex, double se) {
    return se > 0.0 ? (emp - ex) / se : (emp == ex ? 0.0 : INFINITY);
  };
  json voters = json::array();
  for (int i = 0; i < P.n_voters; ++i) {
    json v = json::object();
    for (int s = 0; s < 2; ++s) {
      v[s ? "H" : "L"] = {{"exact", exact.voter[i][s]},
                          {"empirical", sim.voter_mean[i][s]},
                          {"se", sim.voter_se[i][s]},
                          {"count", sim.voter_count[i][s]},
                          {"z", z(sim.voter_mean[i][s], exact.voter[i][s], sim.voter_se[i][s])}};
    }
    voters.push_back(v);
  }
  Report r;
  r.body = {{"profile", c.task.profile},
            {"episodes", sim.episodes},
            {"proposer",
             {{"exact", exact.proposer},
              {"empirical", sim.proposer_mean},
              {"se", sim.proposer_se},
              {"z", z(sim.proposer_mean, exact.proposer, sim.proposer_se)}}},
            {"voters", voters}};
  Table t{{"state", "period", "policy", "frequency"}, {}};
  for (const auto& cell : sim.cells)
    t.rows.push_back({cell.state == State::high ? "h" : "l", std::to_string(cell.period),
                      fmt(cell.policy), fmt(cell.frequency)});
  r.table = t;
  return r;
}

json trial_json(const TrialReport& t) {
  return {{"trials", t.trials},     {"failures", t.failures},
          {"applies_a", t.applies_a}, {"applies_b", t.applies_b},
          {"max_error", t.max_error}, {"first_failure", t.first_failure}};
}

Report run_verify(const Config& c) {
  const auto& s = c.task.suite;
  if (s != "poisson" && s != "ranking" && s != "all")
    throw ConfigError("task.suite must be poisson, ranking or all");
  Report r;
  r.body = json::object();
  if (s == "poisson" || s == "all") {
    const auto t = pb_exactness_trials(c.task.seed, 10, 1000);
    r.body["poisson"] = trial_json(t);
    r.failed |= !t.ok();
  }
  if (s == "ranking" || s == "all") {
    const auto t = ranking_trials(c.task.seed, c.task.trials);
    r.body["ranking"] = trial_json(t);
    r.failed |= !t.ok();
  }
  r.body["passed"] = !r.failed;
  return r;
}

Report sweep_coase(const Config& c) {
  const auto& P = c.model;
  const int i = c.task.informed;
  const auto mus = c.mu_grid();
  struct Row { Regime reg; double va = 0, vt = 0; };
  const auto res = grid_map<Row>(static_cast<int>(mus.size()), pool_size(c), [&](int k) {
    Row row;
    row.reg = classify_regime(P, i);
    row.va = setter_limit_value(P, row.reg, mus[k]);
    row.vt = tioli_limit_value(P, mus[k]);
    return row;
  });
  Report r;
  Table t{{"mu0", "regime", "V_A_limit", "V_T_limit"}, {}};
  for (std::size_t k = 0; k < mus.size(); ++k) {
    if (!res[k].second.empty()) throw Error(ErrorCode::internal, res[k].second);
    const auto& row = res[k].first;
    t.rows.push_back({fmt(mus[k]), to_string(row.reg.kind), fmt(row.va), fmt(row.vt)});
  }
  const auto rv = revision_value(P, i, P.prior_high);
  r.body = {{"points", mus.size()}, {"regime", to_string(classify_regime(P, i).kind)}};
  if (rv.has_threshold) r.body["crossing"] = rv.threshold;
  r.table = t;
  return r;
}

Report sweep_region(const Config& c) {
  const auto& P = c.model;
  const int q = P.decisive();
  const double lo = c.grid.informed_high_lo >= 0 ? c.grid.informed_high_lo
                                                 : P.reservation_low[q];
  const double hi = c.grid.informed_high_hi >= 0 ? c.grid.informed_high_hi
                                                 : 2.0 * P.reservation_high[q];
  const int n_mu = static_cast<int>(c.mu_grid().size());
  const auto pts = region_sweep(P, c.task.informed, lo, hi, c.grid.informed_high_points,
                                std::max(n_mu, 2));
  Report r;
  Table t{{"informed_high", "mu", "regime", "V_A_limit", "V_T_limit", "verdict", "consistent"}, {}};
  long bad = 0;
  for (const auto& p : pts) {
    bad += !p.consistent;
    t.rows.push_back({fmt(p.informed_high), fmt(p.mu), to_string(p.regime.kind),
                      fmt(p.with_revisions), fmt(p.take_it_or_leave_it), to_string(p.verdict),
                      p.consistent ? "1" : "0"});
  }
  r.body = {{"points", pts.size()}, {"inconsistent", bad}};
  r.failed = bad > 0;
  r.table = t;
  return r;
}

// Finite (discount, precision) grid for both constructions.
Report sweep_convergence(const Config& c) {
  const auto& ds = c.grid.discounts;
  const auto& ts = c.grid.precisions;
  const int n = static_cast<int>(ds.size() * ts.size());
  struct Row {
    double screen = NAN, pool_p = NAN, pool_v = NAN, tioli = NAN;
    std::string screen_err, pool_err;
  };
  const int i = c.task.informed;
  const auto eo = engine_opts(c);
  const auto res = grid_map<Row>(n, pool_size(c), [&](int k) {
    ModelParams P = c.model;
    P.discount = ds[k / ts.size()];
    P.precisions.assign(P.n_voters, ts[k % ts.size()]);
    Row row;
    try {
      ScreeningOptions so;
      so.engine = eo;
      const auto path = screening_sequence(P, i, P.prior_high, so);
      row.screen = evaluate_profile(P, build_screening_profile(P, path), P.prior_high, eo).proposer;
    } catch (const Error& e) {
      row.screen_err = e.what();
    }
    try {
      const auto sol = solve_tilde_p(P, P.prior_high);
      row.pool_p = sol.tilde_p;
      row.pool_v = evaluate_profile(sol.params, build_pooling_profile(sol), sol.prior, eo).proposer;
    } catch (const Error& e) {
      row.pool_err = e.what();
    }
    TioliOptions to;
    to.parallel = false;
    row.tioli = tioli_value(P, P.prior_high, to).value;
    return row;
  });
  Table t{{"discount", "precision", "screening_value", "screening_limit", "pooling_policy",
           "pooling_value", "complete_info_value", "tioli_value", "tioli_limit", "note"},
          {}};
  for (int k = 0; k < n; ++k) {
    if (!res[k].second.empty()) throw Error(ErrorCode::internal, res[k].second);
    const auto& row = res[k].first;
    const double d = ds[k / ts.size()], tau = ts[k % ts.size()];
    std::string note = row.screen_err;
    if (!row.pool_err.empty()) note += (note.empty() ? "" : "; ") + row.pool_err;
    for (char& ch : note)
      if (ch == ',' || ch == '\n') ch = ';';
    t.rows.push_back({fmt(d), fmt(tau), fmt(row.screen),
                      fmt(screening_limit_value(c.model, i, c.model.prior_high)), fmt(row.pool_p),
                      fmt(row.pool_v), fmt(complete_info_value(c.model, c.model.prior_high)),
                      fmt(row.tioli), fmt(tioli_limit_value(c.model, c.model.prior_high)), note});
  }
  Report r;
  r.body = {{"points", n}};
  r.table = t;
  return r;
}

Report run_sweep(const Config& c) {
  const auto& s = c.task.sweep;
  if (s == "coase-figure") return sweep_coase(c);
  if (s == "region") return sweep_region(c);
  if (s == "convergence") return sweep_convergence(c);
  throw ConfigError("task.sweep must be coase-figure, region or convergence");
}

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

Report execute(const Config& c) {
  validate_params(c.model);
  const auto& k = c.task.kind;
  Report r;
  if (k == "benchmark") r = run_benchmark(c);
  else if (k == "screening") r = run_screening(c);
  else if (k == "pooling") r = run_pooling(c);
  else if (k == "analysis") r = run_analysis(c);
  else if (k == "simulate") r = run_simulate(c);
  else if (k == "verify") r = run_verify(c);
  else if (k == "sweep") r = run_sweep(c);
  else throw ConfigError("unknown task.kind '" + k + "'");
  r.body = {{"task", k}, {"config", c.to_json()}, {"result", r.body}};
  return r;
}

std::string csv_text(const Table& t) {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) s += ',';
      s += cells[k];
    }
    s += '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return s;
}

std::vector<std::string> write_outputs(const Config& c, const Report& rep) {
  namespace fs = std::filesystem;
  fs::create_directories(c.output.dir);
  std::string base = c.output.name;
  if (base.empty()) {
    base = c.task.kind;
    if (c.task.kind == "sweep") base += "-" + c.task.sweep;
    base += "-" + utc_stamp();
  }
  std::vector<std::string> written;
  const fs::path js = fs::path(c.output.dir) / (base + ".json");
  std::ofstream(js, std::ios::binary) << rep.body.dump(2) << '\n';
  written.push_back(js.string());
  if (rep.table) {
    const fs::path cs = fs::path(c.output.dir) / (base + ".csv");
    std::ofstream(cs, std::ios::binary) << csv_text(*rep.table);
    written.push_back(cs.string());
  }
  return written;
}

}  // namespace agenda::cli
