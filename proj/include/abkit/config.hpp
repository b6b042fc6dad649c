#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abkit/vec.hpp"

namespace abkit {

/// Malformed config text, unknown key or invalid value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueKind { Number, Positive, Integer, Seed, NumberList, IntegerList, Point, Length, Choice, Text };

struct ConfigKey {
  std::string_view key;
  ValueKind kind;
  std::string_view default_value;
  /// Allowed values for Choice, "|"-separated.
  std::string_view choices = {};
};

/// Every accepted key with its default, in echo order.
std::span<const ConfigKey> config_keys();

/// Flat dotted key=value configuration. Every key has a default, so an empty
/// config is complete. Parsing is strict: unknown keys, duplicates and
/// values that do not parse as the key's kind throw ConfigError.
class RunConfig {
 public:
  RunConfig();

  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);

  /// Overrides one key with the same validation as parsing.
  void set(std::string_view key, std::string_view value);

  double number(std::string_view key) const;
  long long integer(std::string_view key) const;
  std::uint64_t seed() const;
  std::vector<double> numbers(std::string_view key) const;
  std::vector<int> integers(std::string_view key) const;
  Vec2 point(std::string_view key) const;
  /// Finite positive length, or nullopt for "infinite".
  std::optional<double> length(std::string_view key) const;
  const std::string& text(std::string_view key) const;

  /// Effective key=value pairs in config_keys() order.
  std::vector<std::pair<std::string, std::string>> echo() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace abkit
