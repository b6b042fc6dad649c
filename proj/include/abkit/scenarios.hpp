#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abkit/config.hpp"

namespace abkit::scenarios {

using Cell = std::variant<double, std::string>;

/// One CSV file: `<name>.csv`.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

struct Assertion {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, double>> derived;
  std::vector<Assertion> assertions;
  std::vector<std::string> warnings;
  double wall_time_s = 0.0;

  bool passed() const;
  /// |value - reference| <= tolerance.
  void check(std::string name, double value, double reference, double tolerance);
  /// value <= bound (reference 0, tolerance = bound).
  void check_below(std::string name, double value, double bound);
  void check_true(std::string name, bool ok);
};

/// Subcommands in `all` order.
std::span<const std::string_view> scenario_names();
bool is_scenario(std::string_view name);

/// Runs one scenario. Throws ConfigError for parameters the scenario cannot
/// accept and NumericalError subclasses for numerical failure.
ScenarioResult run(std::string_view name, const RunConfig& cfg);

}  // namespace abkit::scenarios
