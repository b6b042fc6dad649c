// Acceptance checks with pinned tolerances. Usage: acceptance <abkit-cli> <scratch-dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "abkit/config.hpp"
#include "abkit/scenarios.hpp"

namespace fs = std::filesystem;
using abkit::scenarios::Assertion;
using abkit::scenarios::ScenarioResult;

namespace {

std::map<std::string, ScenarioResult> g_results;

const ScenarioResult& result(const std::string& name) {
  auto it = g_results.find(name);
  if (it == g_results.end()) it = g_results.emplace(name, abkit::scenarios::run(name, abkit::RunConfig())).first;
  return it->second;
}

const Assertion& find(const std::string& scenario, const std::string& name) {
  for (const auto& a : result(scenario).assertions) {
    if (a.name == name) return a;
  }
  throw std::runtime_error("no assertion " + scenario + "/" + name);
}

// Every check re-applies its own tolerance to the recorded value.
struct Criterion {
  std::string name;
  std::vector<std::string> detail;
  bool ok = true;

  void near(const std::string& scen, const std::string& a, double ref, double tol) {
    const double v = find(scen, a).value;
    const bool pass = std::abs(v - ref) <= tol;
    note(a, v, ref, tol, pass);
  }
  void below(const std::string& scen, const std::string& a, double bound) {
    const double v = find(scen, a).value;
    note(a, v, 0.0, bound, v <= bound);
  }
  void truth(const std::string& scen, const std::string& a) {
    const double v = find(scen, a).value;
    note(a, v, 1.0, 0.0, v == 1.0);
  }
  void note(const std::string& a, double v, double ref, double tol, bool pass) {
    if (!pass) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s=%.17g ref=%.17g tol=%.3g", a.c_str(), v, ref, tol);
      detail.emplace_back(buf);
    }
    ok = ok && pass;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Both runs write to the same directory because the CSV preamble echoes
// output.path; the first run's files are copied aside before the second.
bool run_cli_twice(const std::string& cli, const fs::path& scratch, std::vector<std::string>& detail) {
  fs::remove_all(scratch);
  const fs::path out = scratch / "out";
  bool ok = true;
  for (const char* sub : {"run1", "run2"}) {
    fs::create_directories(out);
    const std::string cmd = "\"" + cli + "\" all --seed 12345 --out \"" + out.string() + "\" > \"" +
                            (scratch / (std::string(sub) + ".log")).string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    if (status != 0) {
      detail.push_back(std::string(sub) + " exit status " + std::to_string(status));
      ok = false;
    }
    fs::rename(out, scratch / sub);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(scratch / "run1")) {
    if (entry.path().extension() != ".csv") continue;
    const fs::path other = scratch / "run2" / entry.path().filename();
    ++compared;
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      detail.push_back("differs: " + entry.path().filename().string());
      ok = false;
    }
  }
  std::size_t second = 0;
  for (const auto& entry : fs::directory_iterator(scratch / "run2")) second += entry.path().extension() == ".csv";
  if (compared == 0 || compared != second) {
    detail.push_back("csv count " + std::to_string(compared) + " vs " + std::to_string(second));
    ok = false;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <abkit-cli> <scratch-dir>\n";
    return 2;
  }
  const double pi = M_PI;
  std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"ab_phase_symmetric_and_landau2",
       [&](Criterion& c) {
         c.near("phase", "phase_symmetric_circle_r2", -pi, 1e-8);
         c.near("phase", "phase_landau2_circle_r2", -pi, 1e-8);
       }},
      {"loop_shape_and_winding_invariance",
       [&](Criterion& c) {
         for (const char* g : {"symmetric", "landau2", "custom"}) {
           c.near("phase", std::string("phase_") + g + "_square_s1.5", -pi, 1e-6);
           c.near("phase", std::string("phase_") + g + "_ellipse", -pi, 1e-6);
           c.near("phase", std::string("phase_") + g + "_circle_x3", -3 * pi, 1e-6);
         }
       }},
      {"helmholtz_recovery",
       [&](Criterion& c) {
         for (const char* r : {"0.5", "2", "5"}) {
           c.below("helmholtz", std::string("transverse_matches_symmetric_r") + r, 1e-3);
           c.below("helmholtz", std::string("landau2_longitudinal_is_grad_chi_r") + r, 2e-3);
         }
       }},
      {"dewitt_gauge_invariance",
       [&](Criterion& c) {
         c.below("dewitt", "radial_straight_from_landau2_is_symmetric", 1e-4);
         c.below("dewitt", "polygonal_xy_from_symmetric_is_landau2_inside", 1e-4);
         for (const char* n : {"2", "8", "32"}) c.below("dewitt", std::string("loop_correspondence_n") + n, 1e-4);
         c.below("dewitt", "loop_correspondence_n_independent", 1e-4);
       }},
      {"phase_oam_relation",
       [&](Criterion& c) {
         for (const char* r : {"2", "5", "10"}) c.below("oam", std::string("phase_equals_2pi_L_pot_r") + r, 1e-8);
       }},
      {"ledger_identity",
       [&](Criterion& c) {
         c.below("oam", "ledger_identity", 2e-3);
         c.below("oam", "ledger_gauge_invariance", 2e-3);
       }},
      {"ramp_delta_L_mech",
       [&](Criterion& c) {
         c.near("ramp", "delta_L_mech_equals_minus_beta", 0.5, 1e-8);
         c.below("ramp", "L_gic_drift", 1e-8);
         for (const char* s : {"smoothstep", "linear"}) {
           for (const char* tf : {"1", "10", "100"}) {
             const std::string tag = std::string(s) + "_tf" + tf;
             c.near("ramp", "shape_independent_delta_L_mech_" + tag, 0.5, 1e-8);
             c.below("ramp", "L_gic_drift_" + tag, 1e-8);
           }
         }
       }},
      {"finite_solenoid_far_field",
       [&](Criterion& c) {
         c.near("field", "far_field_A_phi_r100", 5e-5, 0.05 * 5e-5);
         c.near("field", "far_field_B_z_r100", -5e-7, 0.05 * 5e-7);
         c.below("field", "net_flux_z0_below_1e-2_flux", 1e-2 * pi);
       }},
      {"approach_and_infinite_length_limit",
       [&](Criterion& c) {
         c.below("approach", "m0_conservation_residual", 1e-3);
         c.near("sweep", "L_pot_approaches_beta_L80", -0.5, 0.02 * 0.5);
         c.near("sweep", "L_mech_approaches_m0_minus_beta_L80", 1.5, 0.02 * 1.5);
         c.truth("sweep", "monotone_convergence");
       }},
      {"surface_terms",
       [&](Criterion& c) {
         c.below("surface", "S1_cancels_L_pot_rinf100", 0.01 * 0.5);
         const auto& s2 = find("surface", "S2_plus_S3_cancel_rinf100");
         c.note(s2.name, s2.value, 0.0, s2.tolerance, s2.value <= s2.tolerance);
         c.near("surface", "gauss_outer_rinf100", -1.0, 1e-8);
         c.near("surface", "gauss_inner_rinf100", 0.0, 1e-8);
       }},
      {"quantum",
       [&](Criterion& c) {
         c.below("quantum", "bessel_half_integer_closed_forms", 1e-10);
         c.below("quantum", "bessel_three_term_recurrence", 1e-9);
         c.near("quantum", "alpha_approaches_m_minus_beta_L100", 1.5, 0.02 * 1.5);
         c.truth("quantum", "integer_beta_order_set_degenerate");
       }},
      {"all_suite_deterministic",
       [&](Criterion& c) {
         c.ok = run_cli_twice(argv[1], fs::path(argv[2]), c.detail);
         for (const auto name : abkit::scenarios::scenario_names()) {
           if (!result(std::string(name)).passed()) {
             c.ok = false;
             c.detail.push_back(std::string(name) + " has failing assertions");
           }
         }
       }},
  };

  int failures = 0;
  for (auto& [name, body] : criteria) {
    Criterion c{name, {}, true};
    try {
      body(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail.emplace_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS " : "FAIL ") << name << '\n';
    for (const auto& d : c.detail) std::cout << "    " << d << '\n';
    failures += c.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
