#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "agenda/model.hpp"
#include "json.hpp"

namespace agenda::cli {

// Malformed or unknown configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaskConfig {
  std::string kind = "screening";  // benchmark|screening|pooling|analysis|simulate|verify|sweep
  int informed = 0;                // 0-based voter index
  std::string profile = "screening";
  std::string suite = "all";       // poisson|ranking|all
  std::string sweep = "coase-figure";
  std::int64_t episodes = 10000;
  std::uint64_t seed = 0;
  int quota_high = 0;              // second quota for the comparison, 0 = none
  std::string precision_case = "informed_voter";
  int trials = 10000;
};

struct GridConfig {
  double mu_start = 0.0;
  double mu_stop = 1.0;
  double mu_step = 0.01;
  std::vector<double> discounts{0.9, 0.99, 0.999};
  std::vector<double> precisions{0.99, 0.999, 0.9999};
  double informed_high_lo = -1.0;  // negative: derived from the model
  double informed_high_hi = -1.0;
  int informed_high_points = 101;
};

struct OutputConfig {
  std::string dir = ".";
  std::string name;  // empty: task name plus UTC timestamp
};

struct Tolerances {
  double tol = 1e-9;
  int max_periods = 200;
  double residual = 1e-10;
  int threads = 0;  // 0: all logical cores
};

struct Config {
  ModelParams model = canonical_params();
  TaskConfig task;
  GridConfig grid;
  OutputConfig output;
  Tolerances tolerances;

  nlohmann::json to_json() const;
  std::vector<double> mu_grid() const;
};

// Reads the sections model, task, grid, output, tolerances. Unknown keys
// and wrong types raise ConfigError.
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

ModelParams preset(const std::string& name);

}  // namespace agenda::cli
