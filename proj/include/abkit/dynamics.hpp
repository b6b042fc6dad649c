#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "abkit/sources.hpp"

namespace abkit::dynamics {

/// B(t) rising monotonically from 0 (t <= 0) to B_final (t >= t_f).
struct RampProfile {
  enum class Shape { Smoothstep, Linear };
  Shape shape = Shape::Smoothstep;
  double t_f = 10.0;
  double B_final = 1.0;

  double B(double t) const;
  /// Interior derivative on the closed interval [0, t_f], zero outside it.
  double dBdt(double t) const;
  void validate() const;
};

std::string_view to_string(RampProfile::Shape s);
RampProfile::Shape parse_shape(std::string_view s);

struct TrajectoryRow {
  /// Independent variable: t for the ramp, r for the approach.
  double s = 0.0;
  double r = 0.0;
  double L_mech = 0.0;
  double L_pot = 0.0;
  double L_gic = 0.0;
  /// B_z at the electron.
  double B_z = 0.0;
  /// Conservation residual: L_gic drift (ramp) or m0 - (L_mech + e r A_phi) (approach).
  double residual = 0.0;
};

using Trajectory = std::vector<TrajectoryRow>;

struct ODETolerance {
  double abs = 1e-12;
  double rel = 1e-9;
};

struct RampResult {
  Trajectory rows;
  double beta = 0.0;
  double delta_L_mech = 0.0;
  double delta_L_pot = 0.0;
  double delta_L_gic = 0.0;
  double max_gic_drift = 0.0;
};

/// Electron at rest radius r_e > R outside an infinite solenoid whose field
/// follows `ramp` (spec.B0 is not used). Integrates
///   dL_mech/dt = e r_e E_phi = -1/2 e dB/dt R^2
/// with Dormand-Prince 5(4) and dense output on `samples` uniform times in [0, t_f].
RampResult ramp_scenario(double r_e, const sources::SolenoidSpec& spec, const RampProfile& ramp,
                         double e, double L_mech0 = 0.0, ODETolerance tol = {}, int samples = 101);

struct ApproachResult {
  Trajectory rows;
  double m0 = 0.0;
  double max_residual = 0.0;
  /// L_mech at r_start from conservation, m0 - e r A_phi.
  double L_mech_start = 0.0;
};

/// Radial approach at fixed z from r_start inwards to r_end past a finite
/// solenoid: dL_mech/dr = -e r B_z(r, z), integrated in u = ln r. Samples
/// are log-spaced. Throws NearSingularError when the path would reach the
/// current sheet.
ApproachResult approach_scenario(const sources::SolenoidSpec& spec, double z, double m0,
                                 double r_start, double r_end, double e,
                                 ODETolerance tol = {1e-10, 1e-6}, int samples = 61);

struct SweepRow {
  double L = 0.0;
  double r_start = 0.0;
  double L_mech = 0.0;
  double L_pot = 0.0;
  double L_gic = 0.0;
  /// Observed exterior B_z at r_probe.
  double B_z_probe = 0.0;
  /// |flux of B_z through R < r <= r_window| in the plane z.
  double return_flux = 0.0;
  double max_residual = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double beta = 0.0;
  double r_window = 0.0;
  /// |L_pot - beta| and |L_mech - (m0 - beta)| are non-increasing along L_list.
  bool monotone = true;
};

/// approach_scenario for each half-length, from r_start = 100 max(R, L, r_probe)
/// down to r_probe. r_window <= 0 selects 10 r_probe.
SweepResult infinite_length_sweep(double R, double B0, double z, double m0, double e,
                                  std::span<const double> L_list, double r_probe,
                                  ODETolerance tol = {1e-10, 1e-6}, double r_window = 0.0);

}  // namespace abkit::dynamics
