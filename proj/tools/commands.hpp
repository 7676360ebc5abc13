#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace agenda::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  nlohmann::json body;
  std::optional<Table> table;
  bool failed = false;  // verification found counterexamples
};

// 12 significant digits
std::string fmt(double x);

Report execute(const Config& cfg);

// Writes <dir>/<base>.json and, when present, <dir>/<base>.csv.
std::vector<std::string> write_outputs(const Config& cfg, const Report& rep);

std::string csv_text(const Table& t);

}  // namespace agenda::cli
