#include "abkit/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace abkit {

namespace {

constexpr std::array kKeys{
    ConfigKey{"solenoid.R", ValueKind::Positive, "1"},
    ConfigKey{"solenoid.B0", ValueKind::Number, "1"},
    ConfigKey{"solenoid.half_length", ValueKind::Length, "infinite"},
    ConfigKey{"charge.e", ValueKind::Number, "-1"},
    ConfigKey{"tolerance.analytic", ValueKind::Positive, "1e-10"},
    ConfigKey{"tolerance.quadrature", ValueKind::Positive, "1e-6"},
    ConfigKey{"tolerance.ode", ValueKind::Positive, "1e-9"},
    ConfigKey{"tolerance.ode_approach", ValueKind::Positive, "1e-6"},
    ConfigKey{"field.radii", ValueKind::NumberList, "0.25,0.5,0.75,1.5,2,3,5,10,20,50"},
    ConfigKey{"field.profile_half_lengths", ValueKind::NumberList, "1,5,80"},
    ConfigKey{"field.far_half_length", ValueKind::Positive, "1"},
    ConfigKey{"field.far_factor", ValueKind::Positive, "100"},
    ConfigKey{"field.axis_half_length", ValueKind::Positive, "10"},
    ConfigKey{"field.net_flux_half_length", ValueKind::Positive, "5"},
    ConfigKey{"field.net_flux_r_max", ValueKind::Positive, "200"},
    ConfigKey{"phase.loop_radius", ValueKind::Positive, "2"},
    ConfigKey{"phase.windings", ValueKind::Integer, "3"},
    ConfigKey{"phase.square_half_side", ValueKind::Positive, "1.5"},
    ConfigKey{"phase.ellipse_semi_axes", ValueKind::Point, "3,1.5"},
    ConfigKey{"phase.outside_center", ValueKind::Point, "5,0"},
    ConfigKey{"helmholtz.radii", ValueKind::NumberList, "0.5,2,5"},
    ConfigKey{"helmholtz.r0_factor", ValueKind::Positive, "10"},
    ConfigKey{"dewitt.points", ValueKind::Integer, "20"},
    ConfigKey{"dewitt.loop_counts", ValueKind::IntegerList, "2,8,32"},
    ConfigKey{"dewitt.loop_point", ValueKind::Point, "1.5,0.5"},
    ConfigKey{"oam.radii", ValueKind::NumberList, "2,5,10"},
    ConfigKey{"oam.samples", ValueKind::Integer, "100"},
    ConfigKey{"surface.x_e", ValueKind::Point, "3,0"},
    ConfigKey{"surface.r_inf", ValueKind::NumberList, "20,50,100"},
    ConfigKey{"ramp.r_e", ValueKind::Positive, "3"},
    ConfigKey{"ramp.shape", ValueKind::Choice, "smoothstep", "smoothstep|linear"},
    ConfigKey{"ramp.t_f", ValueKind::Positive, "10"},
    ConfigKey{"ramp.t_f_list", ValueKind::NumberList, "1,10,100"},
    ConfigKey{"ramp.samples", ValueKind::Integer, "101"},
    ConfigKey{"approach.half_length", ValueKind::Positive, "5"},
    ConfigKey{"approach.z", ValueKind::Number, "0"},
    ConfigKey{"approach.m0", ValueKind::Number, "2"},
    ConfigKey{"approach.r_start", ValueKind::Positive, "500"},
    ConfigKey{"approach.r_end", ValueKind::Positive, "1.5"},
    ConfigKey{"approach.samples", ValueKind::Integer, "61"},
    ConfigKey{"sweep.L_list", ValueKind::NumberList, "5,20,80"},
    ConfigKey{"sweep.r_probe", ValueKind::Positive, "2"},
    ConfigKey{"sweep.m0", ValueKind::Number, "1"},
    ConfigKey{"sweep.z", ValueKind::Number, "0"},
    ConfigKey{"sweep.r_window", ValueKind::Number, "0"},
    ConfigKey{"quantum.m", ValueKind::Integer, "1"},
    ConfigKey{"quantum.r", ValueKind::Positive, "2"},
    ConfigKey{"quantum.z", ValueKind::Number, "0"},
    ConfigKey{"quantum.L_list", ValueKind::NumberList, "5,20,100"},
    ConfigKey{"quantum.k", ValueKind::Positive, "1"},
    ConfigKey{"quantum.M", ValueKind::Positive, "1"},
    ConfigKey{"output.format", ValueKind::Choice, "csv", "csv|json"},
    ConfigKey{"output.path", ValueKind::Text, "results"},
    ConfigKey{"output.precision", ValueKind::Integer, "17"},
    ConfigKey{"run.seed", ValueKind::Seed, "12345"},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const ConfigKey* find_key(std::string_view key) {
  for (const auto& k : kKeys) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + ": " +
                    std::string(what));
}

double parse_double(std::string_view key, std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_value(key, s, "not a number");
  if (!std::isfinite(v)) bad_value(key, s, "must be finite");
  return v;
}

long long parse_int(std::string_view key, std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_value(key, s, "not an integer");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void validate(const ConfigKey& k, std::string_view v) {
  switch (k.kind) {
    case ValueKind::Number: parse_double(k.key, v); break;
    case ValueKind::Positive:
      if (!(parse_double(k.key, v) > 0.0)) bad_value(k.key, v, "must be > 0");
      break;
    case ValueKind::Integer: parse_int(k.key, v); break;
    case ValueKind::Seed: {
      std::uint64_t s = 0;
      const auto t = trim(v);
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), s);
      if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) bad_value(k.key, v, "not a u64");
      break;
    }
    case ValueKind::NumberList:
      for (auto p : split(v, ',')) parse_double(k.key, p);
      break;
    case ValueKind::IntegerList:
      for (auto p : split(v, ',')) parse_int(k.key, p);
      break;
    case ValueKind::Point:
      if (split(v, ',').size() != 2) bad_value(k.key, v, "expected x,y");
      for (auto p : split(v, ',')) parse_double(k.key, p);
      break;
    case ValueKind::Length:
      if (trim(v) != "infinite" && !(parse_double(k.key, v) > 0.0)) {
        bad_value(k.key, v, "expected a positive length or 'infinite'");
      }
      break;
    case ValueKind::Choice: {
      bool ok = false;
      for (auto c : split(k.choices, '|')) ok = ok || c == trim(v);
      if (!ok) bad_value(k.key, v, "expected one of " + std::string(k.choices));
      break;
    }
    case ValueKind::Text:
      if (trim(v).empty()) bad_value(k.key, v, "must not be empty");
      break;
  }
  if (k.key == "output.precision") {
    const auto p = parse_int(k.key, v);
    if (p < 6 || p > 17) bad_value(k.key, v, "precision must be in [6, 17]");
  }
}

}  // namespace

std::span<const ConfigKey> config_keys() { return kKeys; }

RunConfig::RunConfig() {
  for (const auto& k : kKeys) values_.emplace(std::string(k.key), std::string(k.default_value));
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const ConfigKey* k = find_key(trim(key));
  if (!k) throw ConfigError("unknown config key '" + std::string(trim(key)) + "'");
  value = trim(value);
  validate(*k, value);
  values_[std::string(k->key)] = std::string(value);
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    try {
      cfg.set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

namespace {
const std::string& lookup(const std::map<std::string, std::string, std::less<>>& m, std::string_view key) {
  const auto it = m.find(key);
  if (it == m.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  return it->second;
}
}  // namespace

double RunConfig::number(std::string_view key) const { return parse_double(key, lookup(values_, key)); }

long long RunConfig::integer(std::string_view key) const { return parse_int(key, lookup(values_, key)); }

std::uint64_t RunConfig::seed() const {
  const auto& s = lookup(values_, "run.seed");
  std::uint64_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::vector<double> RunConfig::numbers(std::string_view key) const {
  std::vector<double> out;
  for (auto p : split(lookup(values_, key), ',')) out.push_back(parse_double(key, p));
  return out;
}

std::vector<int> RunConfig::integers(std::string_view key) const {
  std::vector<int> out;
  for (auto p : split(lookup(values_, key), ',')) out.push_back(static_cast<int>(parse_int(key, p)));
  return out;
}

Vec2 RunConfig::point(std::string_view key) const {
  const auto parts = split(lookup(values_, key), ',');
  return {parse_double(key, parts.at(0)), parse_double(key, parts.at(1))};
}

std::optional<double> RunConfig::length(std::string_view key) const {
  const auto& v = lookup(values_, key);
  if (trim(v) == "infinite") return std::nullopt;
  return parse_double(key, v);
}

const std::string& RunConfig::text(std::string_view key) const { return lookup(values_, key); }

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : kKeys) out.emplace_back(std::string(k.key), lookup(values_, k.key));
  return out;
}

}  // namespace abkit
