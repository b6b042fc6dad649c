#include "abkit/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "abkit/errors.hpp"

namespace abkit::dynamics {

namespace odeint = boost::numeric::odeint;

using State = std::array<double, 1>;

double RampProfile::B(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= t_f) return B_final;
  const double s = t / t_f;
  switch (shape) {
    case Shape::Smoothstep: return B_final * s * s * (3.0 - 2.0 * s);
    case Shape::Linear: return B_final * s;
  }
  return 0.0;
}

double RampProfile::dBdt(double t) const {
  if (t < 0.0 || t > t_f) return 0.0;
  const double s = t / t_f;
  switch (shape) {
    case Shape::Smoothstep: return B_final * 6.0 * s * (1.0 - s) / t_f;
    case Shape::Linear: return B_final / t_f;
  }
  return 0.0;
}

void RampProfile::validate() const {
  if (!std::isfinite(t_f) || !(t_f > 0.0)) throw PreconditionError("ramp t_f must be > 0");
  if (!std::isfinite(B_final)) throw PreconditionError("ramp B_final must be finite");
}

std::string_view to_string(RampProfile::Shape s) {
  return s == RampProfile::Shape::Linear ? "linear" : "smoothstep";
}

RampProfile::Shape parse_shape(std::string_view s) {
  if (s == "smoothstep") return RampProfile::Shape::Smoothstep;
  if (s == "linear") return RampProfile::Shape::Linear;
  throw PreconditionError("unknown ramp shape '" + std::string(s) + "'");
}

namespace {

// Dense-output Dormand-Prince run sampling the state at `times`.
template <class Rhs, class Observer>
void integrate_sampled(Rhs&& rhs, State x0, const std::vector<double>& times, double dt0,
                       ODETolerance tol, Observer&& obs) {
  auto stepper = odeint::make_dense_output(tol.abs, tol.rel, odeint::runge_kutta_dopri5<State>());
  try {
    odeint::integrate_times(stepper, rhs, x0, times.begin(), times.end(), dt0, obs);
  } catch (const NumericalError&) {
    throw;
  } catch (const std::exception& ex) {
    throw IntegrationError(std::string("ODE integration failed: ") + ex.what());
  }
}

}  // namespace

RampResult ramp_scenario(double r_e, const sources::SolenoidSpec& spec, const RampProfile& ramp,
                         double e, double L_mech0, ODETolerance tol, int samples) {
  spec.validate();
  ramp.validate();
  if (!spec.is_infinite()) throw PreconditionError("ramp scenario uses an infinite solenoid");
  if (!(r_e > spec.R)) throw PreconditionError("ramp scenario needs r_e > R");
  if (samples < 2) throw PreconditionError("need at least two samples");
  const double R2 = spec.R * spec.R;

  // Exterior transverse potential A_phi = B(t) R^2 / (2 r), E_phi = -dA_phi/dt.
  auto E_phi = [&](double t) { return -0.5 * ramp.dBdt(t) * R2 / r_e; };
  auto rhs = [&](const State&, State& dx, double t) { dx[0] = e * r_e * E_phi(t); };

  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = ramp.t_f * i / (samples - 1);

  RampResult out;
  out.beta = e * M_PI * R2 * ramp.B_final / (2.0 * M_PI);
  const double L_gic0 = L_mech0;
  auto obs = [&](const State& x, double t) {
    TrajectoryRow row;
    row.s = t;
    row.r = r_e;
    row.L_mech = x[0];
    row.L_pot = e * r_e * 0.5 * ramp.B(t) * R2 / r_e;
    row.L_gic = row.L_mech + row.L_pot;
    row.B_z = 0.0;
    row.residual = row.L_gic - L_gic0;
    out.max_gic_drift = std::max(out.max_gic_drift, std::abs(row.residual));
    out.rows.push_back(row);
  };
  integrate_sampled(rhs, State{L_mech0}, times, ramp.t_f / 1000.0, tol, obs);

  const auto& first = out.rows.front();
  const auto& last = out.rows.back();
  out.delta_L_mech = last.L_mech - first.L_mech;
  out.delta_L_pot = last.L_pot - first.L_pot;
  out.delta_L_gic = last.L_gic - first.L_gic;
  return out;
}

ApproachResult approach_scenario(const sources::SolenoidSpec& spec, double z, double m0,
                                 double r_start, double r_end, double e, ODETolerance tol,
                                 int samples) {
  spec.validate();
  if (spec.is_infinite()) throw PreconditionError("approach scenario needs a finite solenoid");
  if (!(r_end > 0.0 && r_start > r_end)) throw PreconditionError("need r_start > r_end > 0");
  if (samples < 2) throw PreconditionError("need at least two samples");
  const double eps = sources::surface_epsilon(spec);
  if (std::abs(z) <= spec.L() + eps && r_end <= spec.R + eps) {
    throw NearSingularError("radial path reaches the current sheet (r_end " +
                            std::to_string(r_end) + ", |z| " + std::to_string(std::abs(z)) + ")");
  }
  const sources::SheetTolerance field_tol{1e-14, 1e-11};
  auto B_z = [&](double r) { return sources::sheet_B_z(r, z, spec, field_tol); };
  auto A_phi = [&](double r) { return sources::sheet_A_phi(r, z, spec, field_tol); };

  // u = ln r; dL/du = r dL/dr = -e r^2 B_z.
  auto rhs = [&](const State&, State& dx, double u) {
    const double r = std::exp(u);
    dx[0] = -e * r * r * B_z(r);
  };
  const double u0 = std::log(r_start);
  const double u1 = std::log(r_end);
  std::vector<double> times(samples);
  std::vector<double> radii(samples);
  for (int i = 0; i < samples; ++i) {
    times[i] = u0 + (u1 - u0) * i / (samples - 1);
    radii[i] = std::exp(times[i]);
  }
  times.back() = u1;
  radii.front() = r_start;
  radii.back() = r_end;

  ApproachResult out;
  out.m0 = m0;
  out.L_mech_start = m0 - e * r_start * A_phi(r_start);
  std::size_t next = 0;
  auto obs = [&](const State& x, double /*u*/) {
    TrajectoryRow row;
    row.r = radii[std::min(next++, radii.size() - 1)];
    row.s = row.r;
    row.L_mech = x[0];
    row.L_pot = e * row.r * A_phi(row.r);
    row.L_gic = row.L_mech + row.L_pot;
    row.B_z = B_z(row.r);
    row.residual = m0 - row.L_gic;
    out.max_residual = std::max(out.max_residual, std::abs(row.residual));
    out.rows.push_back(row);
  };
  integrate_sampled(rhs, State{out.L_mech_start}, times, (u1 - u0) / 200.0, tol, obs);
  return out;
}

SweepResult infinite_length_sweep(double R, double B0, double z, double m0, double e,
                                  std::span<const double> L_list, double r_probe,
                                  ODETolerance tol, double r_window) {
  if (L_list.empty()) throw PreconditionError("L_list is empty");
  if (!(r_probe > R)) throw PreconditionError("r_probe must exceed R");
  SweepResult out;
  out.beta = e * R * R * B0 / 2.0;
  out.r_window = r_window > 0.0 ? r_window : 10.0 * r_probe;
  if (!(out.r_window > r_probe)) throw PreconditionError("r_window must exceed r_probe");
  double prev_pot = INFINITY, prev_mech = INFINITY;
  for (double L : L_list) {
    const auto spec = sources::SolenoidSpec::finite(R, B0, L);
    SweepRow row;
    row.L = L;
    row.r_start = 100.0 * std::max({R, L, r_probe});
    const auto run = approach_scenario(spec, z, m0, row.r_start, r_probe, e, tol);
    const auto& last = run.rows.back();
    row.L_mech = last.L_mech;
    row.L_pot = last.L_pot;
    row.L_gic = last.L_gic;
    row.B_z_probe = last.B_z;
    row.max_residual = run.max_residual;
    row.return_flux = std::abs(sources::flux_through_annulus(spec, z, R, out.r_window, 1e-10));
    const double d_pot = std::abs(row.L_pot - out.beta);
    const double d_mech = std::abs(row.L_mech - (m0 - out.beta));
    if (d_pot > prev_pot || d_mech > prev_mech) out.monotone = false;
    prev_pot = d_pot;
    prev_mech = d_mech;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace abkit::dynamics
