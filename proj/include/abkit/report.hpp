#pragma once

#include <string>

#include "abkit/scenarios.hpp"

namespace abkit::report {

/// %.{digits}g, with "inf", "-inf" and "nan" spelled out.
std::string format_number(double v, int digits);

/// Comma-separated table with a `#` preamble (version, scenario, config echo,
/// derived values). Deterministic: no timestamps or timings.
std::string table_csv(const scenarios::ScenarioResult& r, const scenarios::Table& t, int digits);
/// name,value,reference,tolerance,pass
std::string assertions_csv(const scenarios::ScenarioResult& r, int digits);
std::string result_json(const scenarios::ScenarioResult& r);

/// Writes every table plus `<scenario>_assertions.csv` (csv) or
/// `<scenario>.json` (json) into dir, each atomically via rename.
void write_result(const scenarios::ScenarioResult& r, const std::string& dir,
                  const std::string& format, int digits);

}  // namespace abkit::report
