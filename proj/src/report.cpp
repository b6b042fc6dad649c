#include "abkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "abkit/version.hpp"

namespace abkit::report {

using scenarios::Cell;
using scenarios::ScenarioResult;
using scenarios::Table;

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d, digits);
  return csv_field(std::get<std::string>(c));
}

void preamble(std::ostringstream& os, const ScenarioResult& r, const std::string& table, int digits) {
  os << "# abkit " << kVersion << '\n';
  os << "# scenario=" << r.scenario << '\n';
  os << "# table=" << table << '\n';
  for (const auto& [k, v] : r.config) os << "# config." << k << '=' << v << '\n';
  for (const auto& [k, v] : r.derived) os << "# derived." << k << '=' << format_number(v, digits) << '\n';
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v, 17);
}

}  // namespace

std::string table_csv(const ScenarioResult& r, const Table& t, int digits) {
  std::ostringstream os;
  preamble(os, r, t.name, digits);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i], digits);
    os << '\n';
  }
  return os.str();
}

std::string assertions_csv(const ScenarioResult& r, int digits) {
  std::ostringstream os;
  preamble(os, r, r.scenario + "_assertions", digits);
  os << "name,value,reference,tolerance,pass\n";
  for (const auto& a : r.assertions) {
    os << csv_field(a.name) << ',' << format_number(a.value, digits) << ','
       << format_number(a.reference, digits) << ',' << format_number(a.tolerance, digits) << ','
       << (a.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string result_json(const ScenarioResult& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["version"] = kVersion;
  auto& cfg = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tables) {
    nlohmann::ordered_json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      auto jr = nlohmann::ordered_json::array();
      for (const auto& c : row) {
        if (const auto* d = std::get_if<double>(&c)) jr.push_back(json_number(*d));
        else jr.push_back(std::get<std::string>(c));
      }
      jt["rows"].push_back(std::move(jr));
    }
    j["tables"].push_back(std::move(jt));
  }
  auto& der = j["derived"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.derived) der[k] = json_number(v);
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions) {
    j["assertions"].push_back({{"name", a.name},
                               {"value", json_number(a.value)},
                               {"reference", json_number(a.reference)},
                               {"tolerance", json_number(a.tolerance)},
                               {"pass", a.pass}});
  }
  j["warnings"] = r.warnings;
  j["passed"] = r.passed();
  j["wall_time_s"] = r.wall_time_s;
  return j.dump(2) + "\n";
}

void write_result(const ScenarioResult& r, const std::string& dir, const std::string& format, int digits) {
  const std::filesystem::path base(dir);
  std::filesystem::create_directories(base);
  if (format == "json") {
    write_atomic(base / (r.scenario + ".json"), result_json(r));
    return;
  }
  for (const auto& t : r.tables) write_atomic(base / (t.name + ".csv"), table_csv(r, t, digits));
  write_atomic(base / (r.scenario + "_assertions.csv"), assertions_csv(r, digits));
}

}  // namespace abkit::report
