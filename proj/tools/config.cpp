#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace agenda::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError("section '" + section + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + section + "." + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("wrong type for '" + section + "." + key + "'");
  }
}

}  // namespace

ModelParams preset(const std::string& name) {
  ModelParams p = canonical_params();
  if (name == "canonical") return p;
  if (name == "precise") {
    p.discount = 0.999;
    p.precisions.assign(3, 0.999);
    return p;
  }
  if (name == "coase") {
    p.discount = 0.999;
    p.precisions.assign(3, 0.999);
    p.reservation_low = {1.5, 1.0, 0.5};
    p.reservation_high = {1.8, 1.7, 1.5};
    return p;
  }
  if (name == "full-extraction") {
    p.discount = 0.999;
    p.precisions.assign(3, 0.999);
    p.reservation_high = {5.0, 2.8, 2.2};
    return p;
  }
  throw ConfigError("unknown model preset '" + name + "'");
}

Config parse_config(const json& j) {
  check_keys(j, "<root>", {"model", "task", "grid", "output", "tolerances"});
  Config c;
  if (j.contains("model")) {
    const json& m = j["model"];
    check_keys(m, "model",
               {"preset", "n_voters", "quota", "policy_cap", "discount", "precision",
                "precisions", "reservation_low", "reservation_high", "prior_high"});
    std::string name = "canonical";
    read(m, "preset", name, "model");
    c.model = preset(name);
    read(m, "reservation_low", c.model.reservation_low, "model");
    read(m, "reservation_high", c.model.reservation_high, "model");
    c.model.n_voters = static_cast<int>(c.model.reservation_low.size());
    read(m, "n_voters", c.model.n_voters, "model");
    read(m, "quota", c.model.quota, "model");
    read(m, "policy_cap", c.model.policy_cap, "model");
    read(m, "discount", c.model.discount, "model");
    read(m, "prior_high", c.model.prior_high, "model");
    if (m.contains("precision") && m.contains("precisions"))
      throw ConfigError("give either model.precision or model.precisions");
    if (m.contains("precision")) {
      double t = 0.0;
      read(m, "precision", t, "model");
      c.model.precisions.assign(static_cast<std::size_t>(std::max(c.model.n_voters, 0)), t);
    }
    read(m, "precisions", c.model.precisions, "model");
  }
  if (j.contains("task")) {
    const json& t = j["task"];
    check_keys(t, "task",
               {"kind", "informed", "profile", "suite", "sweep", "episodes", "seed",
                "quota_high", "precision_case", "trials"});
    read(t, "kind", c.task.kind, "task");
    read(t, "informed", c.task.informed, "task");
    read(t, "profile", c.task.profile, "task");
    read(t, "suite", c.task.suite, "task");
    read(t, "sweep", c.task.sweep, "task");
    read(t, "episodes", c.task.episodes, "task");
    read(t, "seed", c.task.seed, "task");
    read(t, "quota_high", c.task.quota_high, "task");
    read(t, "precision_case", c.task.precision_case, "task");
    read(t, "trials", c.task.trials, "task");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, "grid",
               {"mu_start", "mu_stop", "mu_step", "discounts", "precisions",
                "informed_high_lo", "informed_high_hi", "informed_high_points"});
    read(g, "mu_start", c.grid.mu_start, "grid");
    read(g, "mu_stop", c.grid.mu_stop, "grid");
    read(g, "mu_step", c.grid.mu_step, "grid");
    read(g, "discounts", c.grid.discounts, "grid");
    read(g, "precisions", c.grid.precisions, "grid");
    read(g, "informed_high_lo", c.grid.informed_high_lo, "grid");
    read(g, "informed_high_hi", c.grid.informed_high_hi, "grid");
    read(g, "informed_high_points", c.grid.informed_high_points, "grid");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"dir", "name"});
    read(o, "dir", c.output.dir, "output");
    read(o, "name", c.output.name, "output");
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, "tolerances", {"tol", "max_periods", "residual", "threads"});
    read(t, "tol", c.tolerances.tol, "tolerances");
    read(t, "max_periods", c.tolerances.max_periods, "tolerances");
    read(t, "residual", c.tolerances.residual, "tolerances");
    read(t, "threads", c.tolerances.threads, "tolerances");
  }
  if (!(c.grid.mu_step > 0.0) || c.grid.mu_stop < c.grid.mu_start)
    throw ConfigError("grid.mu_step must be positive and mu_stop >= mu_start");
  if (c.tolerances.max_periods < 1) throw ConfigError("tolerances.max_periods must be >= 1");
  if (c.tolerances.threads < 0) throw ConfigError("tolerances.threads must be >= 0");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

json Config::to_json() const {
  json j;
  j["model"] = {{"n_voters", model.n_voters},
                {"quota", model.quota},
                {"policy_cap", model.policy_cap},
                {"discount", model.discount},
                {"precisions", model.precisions},
                {"reservation_low", model.reservation_low},
                {"reservation_high", model.reservation_high},
                {"prior_high", model.prior_high}};
  j["task"] = {{"kind", task.kind},         {"informed", task.informed},
               {"profile", task.profile},   {"suite", task.suite},
               {"sweep", task.sweep},       {"episodes", task.episodes},
               {"seed", task.seed},         {"quota_high", task.quota_high},
               {"precision_case", task.precision_case}, {"trials", task.trials}};
  j["grid"] = {{"mu_start", grid.mu_start},
               {"mu_stop", grid.mu_stop},
               {"mu_step", grid.mu_step},
               {"discounts", grid.discounts},
               {"precisions", grid.precisions},
               {"informed_high_lo", grid.informed_high_lo},
               {"informed_high_hi", grid.informed_high_hi},
               {"informed_high_points", grid.informed_high_points}};
  j["output"] = {{"dir", output.dir}, {"name", output.name}};
  j["tolerances"] = {{"tol", tolerances.tol},
                     {"max_periods", tolerances.max_periods},
                     {"residual", tolerances.residual},
                     {"threads", tolerances.threads}};
  return j;
}

std::vector<double> Config::mu_grid() const {
  const long n = std::lround(std::floor((grid.mu_stop - grid.mu_start) / grid.mu_step + 1e-9));
  std::vector<double> out;
  for (long k = 0; k <= n; ++k) out.push_back(grid.mu_start + k * grid.mu_step);
  return out;
}

}  // namespace agenda::cli
