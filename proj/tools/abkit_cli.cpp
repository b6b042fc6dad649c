#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abkit/config.hpp"
#include "abkit/errors.hpp"
#include "abkit/report.hpp"
#include "abkit/scenarios.hpp"
#include "abkit/version.hpp"

namespace {

enum Exit { kPass = 0, kAssertionFailed = 1, kConfigError = 2, kNumericalError = 3 };

void write_summary(const std::vector<abkit::scenarios::ScenarioResult>& results, const std::string& dir) {
  std::ostringstream os;
  os << "# abkit " << abkit::kVersion << '\n';
  os << "scenario,assertions,failed,warnings,pass\n";
  for (const auto& r : results) {
    int failed = 0;
    for (const auto& a : r.assertions) failed += a.pass ? 0 : 1;
    os << r.scenario << ',' << r.assertions.size() << ',' << failed << ',' << r.warnings.size() << ','
       << (r.passed() ? "true" : "false") << '\n';
  }
  const auto path = std::filesystem::path(dir) / "all_summary.csv";
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << os.str();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aharonov-Bohm solenoid toolkit scenario runner"};
  app.set_version_flag("--version", std::string(abkit::kVersion));
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string command = "all";

  std::vector<std::string> commands(abkit::scenarios::scenario_names().begin(),
                                    abkit::scenarios::scenario_names().end());
  commands.emplace_back("all");

  app.add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output.path)");
  app.add_option("--format", format, "csv or json (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomized property sampling (overrides run.seed)");
  app.add_flag("--strict", strict, "treat warnings as failures");
  app.add_option("command", command, "scenario to run")->check(CLI::IsMember(commands));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  abkit::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = abkit::RunConfig::load(config_path);
    if (out_dir) cfg.set("output.path", *out_dir);
    if (format) cfg.set("output.format", *format);
    if (seed) cfg.set("run.seed", std::to_string(*seed));
  } catch (const abkit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  std::vector<std::string> todo;
  if (command == "all") {
    for (auto n : abkit::scenarios::scenario_names()) todo.emplace_back(n);
  } else {
    todo.push_back(command);
  }

  const std::string dir = cfg.text("output.path");
  const std::string fmt = cfg.text("output.format");
  const int digits = static_cast<int>(cfg.integer("output.precision"));
  std::vector<abkit::scenarios::ScenarioResult> results;
  bool ok = true;
  for (const auto& name : todo) {
    try {
      auto r = abkit::scenarios::run(name, cfg);
      abkit::report::write_result(r, dir, fmt, digits);
      int failed = 0;
      for (const auto& a : r.assertions) {
        if (!a.pass) {
          ++failed;
          std::cerr << name << ": FAIL " << a.name << " value=" << abkit::report::format_number(a.value, 17)
                    << " reference=" << abkit::report::format_number(a.reference, 17)
                    << " tolerance=" << abkit::report::format_number(a.tolerance, 17) << '\n';
        }
      }
      for (const auto& w : r.warnings) std::cerr << name << ": warning: " << w << '\n';
      const bool pass = failed == 0 && !(strict && !r.warnings.empty());
      std::cout << name << ": " << (pass ? "PASS" : "FAIL") << " (" << r.assertions.size() - failed << '/'
                << r.assertions.size() << " assertions, " << r.warnings.size() << " warnings)\n";
      ok = ok && pass;
      results.push_back(std::move(r));
    } catch (const abkit::ConfigError& e) {
      std::cerr << name << ": config error: " << e.what() << '\n';
      return kConfigError;
    } catch (const abkit::PreconditionError& e) {
      std::cerr << name << ": invalid parameters: " << e.what() << '\n';
      return kConfigError;
    } catch (const abkit::NumericalError& e) {
      std::cerr << name << ": numerical failure: " << e.what() << '\n';
      return kNumericalError;
    } catch (const std::exception& e) {
      std::cerr << name << ": failure: " << e.what() << '\n';
      return kNumericalError;
    }
  }
  if (command == "all") {
    try {
      write_summary(results, dir);
    } catch (const std::exception& e) {
      std::cerr << "failure writing summary: " << e.what() << '\n';
      return kNumericalError;
    }
  }
  return ok ? kPass : kAssertionFailed;
}
