#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "abkit/config.hpp"
#include "abkit/report.hpp"
#include "abkit/scenarios.hpp"

using namespace abkit;

TEST(Config, DefaultsAreComplete) {
  const RunConfig cfg;
  EXPECT_EQ(cfg.number("solenoid.R"), 1.0);
  EXPECT_EQ(cfg.number("charge.e"), -1.0);
  EXPECT_FALSE(cfg.length("solenoid.half_length").has_value());
  EXPECT_EQ(cfg.text("output.format"), "csv");
  EXPECT_EQ(cfg.seed(), 12345u);
  EXPECT_EQ(cfg.integers("dewitt.loop_counts"), (std::vector<int>{2, 8, 32}));
  EXPECT_EQ(cfg.echo().size(), config_keys().size());
}

TEST(Config, ParsesCommentsAndOverrides) {
  const auto cfg = RunConfig::parse("# header\n\nsolenoid.R = 2.5\nsolenoid.half_length=7\nphase.ellipse_semi_axes=4,2\n");
  EXPECT_EQ(cfg.number("solenoid.R"), 2.5);
  EXPECT_EQ(cfg.length("solenoid.half_length"), 7.0);
  const Vec2 ax = cfg.point("phase.ellipse_semi_axes");
  EXPECT_EQ(ax.x, 4.0);
  EXPECT_EQ(ax.y, 2.0);
}

TEST(Config, EmptyEqualsDefaults) { EXPECT_EQ(RunConfig::parse("").echo(), RunConfig().echo()); }

TEST(Config, StrictErrors) {
  EXPECT_THROW(RunConfig::parse("solenoid.radius=2"), ConfigError);
  EXPECT_THROW(RunConfig::parse("solenoid.R=1\nsolenoid.R=2"), ConfigError);
  EXPECT_THROW(RunConfig::parse("solenoid.R=abc"), ConfigError);
  EXPECT_THROW(RunConfig::parse("solenoid.R=-1"), ConfigError);
  EXPECT_THROW(RunConfig::parse("solenoid.R"), ConfigError);
  EXPECT_THROW(RunConfig::parse("ramp.shape=cubic"), ConfigError);
  EXPECT_THROW(RunConfig::parse("output.precision=5"), ConfigError);
  EXPECT_THROW(RunConfig::parse("output.precision=18"), ConfigError);
  EXPECT_NO_THROW(RunConfig::parse("output.precision=6"));
  EXPECT_THROW(RunConfig::load("/nonexistent/abkit.cfg"), ConfigError);
  try {
    RunConfig::parse("solenoid.R=1\n\nbogus.key=3\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(Config, EchoRoundTrips) {
  RunConfig cfg;
  cfg.set("ramp.t_f", "12.5");
  std::ostringstream os;
  for (const auto& [k, v] : cfg.echo()) os << k << '=' << v << '\n';
  EXPECT_EQ(RunConfig::parse(os.str()).echo(), cfg.echo());
}

TEST(Report, NumberFormatting) {
  EXPECT_EQ(report::format_number(0.1, 17), "0.10000000000000001");
  EXPECT_EQ(report::format_number(-M_PI, 17), "-3.1415926535897931");
  EXPECT_EQ(report::format_number(2.0, 17), "2");
  EXPECT_EQ(report::format_number(std::numeric_limits<double>::infinity(), 17), "inf");
  EXPECT_EQ(report::format_number(-std::numeric_limits<double>::infinity(), 17), "-inf");
  EXPECT_EQ(report::format_number(std::nan(""), 17), "nan");
  EXPECT_EQ(std::stod(report::format_number(1.0 / 3.0, 17)), 1.0 / 3.0);
}

TEST(Report, CsvDeterministicAndSchema) {
  const RunConfig cfg;
  const auto a = scenarios::run("phase", cfg);
  const auto b = scenarios::run("phase", cfg);
  ASSERT_FALSE(a.tables.empty());
  const std::string ca = report::table_csv(a, a.tables[0], 17);
  EXPECT_EQ(ca, report::table_csv(b, b.tables[0], 17));
  EXPECT_EQ(report::assertions_csv(a, 17), report::assertions_csv(b, 17));
  EXPECT_EQ(ca.rfind("# abkit ", 0), 0u);
  EXPECT_NE(ca.find("# scenario=phase\n"), std::string::npos);
  EXPECT_NE(ca.find("\ngauge,loop,windings,phase,reference,abs_error\n"), std::string::npos);
  EXPECT_NE(report::assertions_csv(a, 17).find("\nname,value,reference,tolerance,pass\n"), std::string::npos);
}

TEST(Report, JsonFields) {
  const auto r = scenarios::run("ramp", RunConfig());
  const auto j = nlohmann::json::parse(report::result_json(r));
  for (const char* k : {"scenario", "version", "config", "tables", "derived", "assertions", "warnings", "passed", "wall_time_s"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["scenario"], "ramp");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["tables"][0]["name"], "ramp");
  EXPECT_EQ(j["tables"][0]["columns"].size(), j["tables"][0]["rows"][0].size());
}

TEST(Report, WritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "abkit_report_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto r = scenarios::run("ramp", RunConfig());
  report::write_result(r, dir.string(), "csv", 17);
  EXPECT_TRUE(std::filesystem::exists(dir / "ramp.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "ramp_shapes.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "ramp_assertions.csv"));
  report::write_result(r, dir.string(), "json", 17);
  EXPECT_TRUE(std::filesystem::exists(dir / "ramp.json"));
  std::filesystem::remove_all(dir);
}

TEST(Scenarios, NamesAndUnknown) {
  EXPECT_EQ(scenarios::scenario_names().size(), 10u);
  EXPECT_TRUE(scenarios::is_scenario("sweep"));
  EXPECT_FALSE(scenarios::is_scenario("all"));
}

TEST(Scenarios, PhaseDefaultsPass) {
  const auto r = scenarios::run("phase", RunConfig());
  EXPECT_TRUE(r.passed());
  for (const auto& a : r.assertions) {
    if (a.name == "phase_symmetric_circle_r2" || a.name == "phase_landau2_circle_r2") {
      EXPECT_NEAR(a.value, -M_PI, 1e-8);
    }
  }
}

TEST(Scenarios, InvalidGeometryIsConfigError) {
  RunConfig cfg;
  cfg.set("phase.loop_radius", "0.5");
  EXPECT_THROW(scenarios::run("phase", cfg), ConfigError);
}
