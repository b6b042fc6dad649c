#include "abkit/sources.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "abkit/errors.hpp"
#include "abkit/quadrature.hpp"

namespace abkit::sources {

double SolenoidSpec::L() const {
  if (!half_length) throw PreconditionError("infinite solenoid has no half-length");
  return *half_length;
}

void SolenoidSpec::validate() const {
  if (!std::isfinite(R) || !(R > 0.0)) throw PreconditionError("solenoid radius must be finite and > 0");
  if (!std::isfinite(B0)) throw PreconditionError("B0 must be finite");
  if (half_length && (!std::isfinite(*half_length) || !(*half_length > 0.0))) {
    throw PreconditionError("finite half-length must be > 0");
  }
}

namespace {

void require_infinite(const SolenoidSpec& spec) {
  if (!spec.is_infinite()) throw PreconditionError("operation requires an infinite solenoid");
}

}  // namespace

Vec2 eval_A_symmetric(const Vec2& x, const SolenoidSpec& spec) {
  require_infinite(spec);
  const double r = x.r();
  if (r == 0.0) return {};
  const double a_phi = r < spec.R ? 0.5 * spec.B0 * r : 0.5 * spec.B0 * spec.R * spec.R / r;
  return a_phi * e_phi(x.phi());
}

Vec2 eval_A_landau2(const Vec2& x, const SolenoidSpec& spec) {
  require_infinite(spec);
  const double r = x.r();
  if (r < spec.R) return {0.0, spec.B0 * x.x};
  const double phi = x.phi();
  const double a_phi = 0.5 * spec.B0 * r * (std::cos(2.0 * phi) + spec.R * spec.R / (r * r));
  const double a_r = 0.5 * spec.B0 * r * std::sin(2.0 * phi);
  return a_phi * e_phi(phi) + a_r * e_r(phi);
}

double eval_B_infinite(const Vec2& x, const SolenoidSpec& spec) {
  require_infinite(spec);
  return x.r() <= spec.R ? spec.B0 : 0.0;
}

double landau2_chi(const Vec2& x, const SolenoidSpec& spec) { return 0.5 * spec.B0 * x.x * x.y; }

FluxProfile infinite_flux_profile(const SolenoidSpec& spec) {
  require_infinite(spec);
  return FluxProfile{[spec](const Vec2& x) { return eval_B_infinite(x, spec); }, spec.R, {spec.R}};
}

GaugeField symmetric_gauge(const SolenoidSpec& spec) {
  spec.validate();
  require_infinite(spec);
  return GaugeField(GaugeTag::Symmetric, [spec](const Vec2& x) { return eval_A_symmetric(x, spec); },
                    infinite_flux_profile(spec), {spec.R});
}

GaugeField landau2_gauge(const SolenoidSpec& spec) {
  spec.validate();
  require_infinite(spec);
  return GaugeField(GaugeTag::Landau2, [spec](const Vec2& x) { return eval_A_landau2(x, spec); },
                    infinite_flux_profile(spec), {spec.R});
}

// ---- finite solenoid ---------------------------------------------------

namespace {

enum class Component { APhi, BRho, BZ };

// [u / (a^2 sqrt(a^2 + u^2))] from u1 to u2, without cancellation when the
// two endpoints lie on the same side.
double axial_bz_kernel(double a2, double u1, double u2) {
  const double s1 = std::sqrt(a2 + u1 * u1);
  const double s2 = std::sqrt(a2 + u2 * u2);
  if ((u1 >= 0.0) == (u2 >= 0.0) && u1 != 0.0 && u2 != 0.0) {
    return (u2 - u1) * (u2 + u1) / (s1 * s2 * (u2 * s1 + u1 * s2));
  }
  return (u2 / s2 - u1 / s1) / a2;
}

double axial_integrand(Component c, double rho, double R, double u1, double u2, double phi) {
  const double cp = std::cos(phi);
  const double a2 = rho * rho + R * R - 2.0 * rho * R * cp;
  switch (c) {
    case Component::APhi: {
      const double a = std::sqrt(a2);
      return cp * (std::asinh(u2 / a) - std::asinh(u1 / a));
    }
    case Component::BRho:
      return cp * (1.0 / std::sqrt(a2 + u2 * u2) - 1.0 / std::sqrt(a2 + u1 * u1));
    case Component::BZ:
      return (R - rho * cp) * axial_bz_kernel(a2, u1, u2);
  }
  return 0.0;
}

double surface_integrand(Component c, double rho, double R, double dz, double phi) {
  const double cp = std::cos(phi);
  const double d2 = rho * rho + R * R - 2.0 * rho * R * cp + dz * dz;
  const double d = std::sqrt(d2);
  switch (c) {
    case Component::APhi: return cp / d;
    case Component::BRho: return cp * dz / (d2 * d);
    case Component::BZ: return (R - rho * cp) / (d2 * d);
  }
  return 0.0;
}

double sheet_component(Component c, double rho, double z, const SolenoidSpec& spec,
                       SheetTolerance tol, SheetRoute route) {
  spec.validate();
  const double L = spec.L();
  const double R = spec.R;
  rho = std::abs(rho);
  if (spec.B0 == 0.0) return 0.0;
  // Prefactor B0 R / (4 pi), doubled for the phi' -> -phi' symmetry.
  const double pref = spec.B0 * R / (2.0 * M_PI);
  const double scale = std::abs(pref);

  if (route == SheetRoute::AxialClosedForm) {
    const double u1 = -L - z;
    const double u2 = L - z;
    quad::Options opt;
    opt.abs_tol = tol.abs / scale;
    opt.rel_tol = tol.rel;
    opt.max_intervals = 20000;
    auto f = [&](double phi) { return axial_integrand(c, rho, R, u1, u2, phi); };
    return pref * quad::integrate(f, 0.0, M_PI, opt).value;
  }

  quad::Options outer;
  outer.abs_tol = tol.abs / scale;
  outer.rel_tol = tol.rel;
  outer.max_intervals = 20000;
  quad::Options inner;
  inner.abs_tol = 0.01 * outer.abs_tol / (2.0 * L);
  inner.rel_tol = 0.1 * tol.rel;
  inner.max_intervals = 20000;
  auto loop = [&](double zp) {
    const double dz = z - zp;
    auto f = [&](double phi) { return surface_integrand(c, rho, R, dz, phi); };
    return quad::integrate(f, 0.0, M_PI, inner).value;
  };
  const std::array<double, 1> breaks{z};
  return pref * quad::integrate(loop, -L, L, outer, breaks).value;
}

}  // namespace

double sheet_A_phi(double rho, double z, const SolenoidSpec& spec, SheetTolerance tol,
                   SheetRoute route) {
  return sheet_component(Component::APhi, rho, z, spec, tol, route);
}

double sheet_B_z(double rho, double z, const SolenoidSpec& spec, SheetTolerance tol,
                 SheetRoute route) {
  return sheet_component(Component::BZ, rho, z, spec, tol, route);
}

double sheet_B_rho(double rho, double z, const SolenoidSpec& spec, SheetTolerance tol,
                   SheetRoute route) {
  return sheet_component(Component::BRho, rho, z, spec, tol, route);
}

double surface_epsilon(const SolenoidSpec& spec) { return 1e-3 * spec.R; }

FiniteSolenoidField eval_finite_solenoid(const Point3& x, const SolenoidSpec& spec,
                                         SheetTolerance tol, SheetRoute route) {
  spec.validate();
  const double L = spec.L();
  const double rho = x.planar().r();
  const double dr = rho - spec.R;
  const double dzo = std::max(0.0, std::abs(x.z) - L);
  const double dist = std::hypot(dr, dzo);
  if (dist <= surface_epsilon(spec)) {
    throw NearSingularError("point within " + std::to_string(surface_epsilon(spec)) +
                            " of the solenoid current sheet (distance " + std::to_string(dist) + ")");
  }
  FiniteSolenoidField out;
  out.A_phi = sheet_A_phi(rho, x.z, spec, tol, route);
  out.B_rho = sheet_B_rho(rho, x.z, spec, tol, route);
  out.B_z = sheet_B_z(rho, x.z, spec, tol, route);
  const double phi = rho > 0.0 ? x.planar().phi() : 0.0;
  const Vec2 ap = out.A_phi * e_phi(phi);
  const Vec2 br = out.B_rho * e_r(phi);
  out.A = {ap.x, ap.y, 0.0};
  out.B = {br.x, br.y, out.B_z};
  return out;
}

double far_field_A_phi(double r, const SolenoidSpec& spec) {
  return 0.5 * spec.B0 * spec.R * spec.R * spec.L() / (r * r);
}

double far_field_B_z(double r, const SolenoidSpec& spec) {
  return -0.5 * spec.B0 * spec.R * spec.R * spec.L() / (r * r * r);
}

double flux_through_annulus(const SolenoidSpec& spec, double z, double r_lo, double r_hi,
                            double tol) {
  spec.validate();
  if (!(r_hi >= r_lo) || r_lo < 0.0) throw PreconditionError("annulus needs 0 <= r_lo <= r_hi");
  const std::array<double, 1> breaks{spec.R};
  quad::Options opt;
  opt.abs_tol = tol;
  opt.max_intervals = 20000;
  if (spec.is_infinite()) {
    auto f = [&](double r) { return 2.0 * M_PI * r * eval_B_infinite({r, 0.0}, spec); };
    return quad::integrate(f, r_lo, r_hi, opt, breaks).value;
  }
  // Inner B_z evaluations are held well below the outer tolerance.
  const SheetTolerance inner{1e-3 * tol / std::max(1.0, r_hi * r_hi), 1e-11};
  auto f = [&](double r) { return 2.0 * M_PI * r * sheet_B_z(r, z, spec, inner); };
  return quad::integrate(f, r_lo, r_hi, opt, breaks).value;
}

NetFlux net_flux_z0(const SolenoidSpec& spec, double r_max, double tol) {
  spec.validate();
  if (!(r_max > spec.R)) throw PreconditionError("r_max must exceed the solenoid radius");
  NetFlux out;
  out.core = flux_through_annulus(spec, 0.0, 0.0, r_max, 1e-3 * tol);
  if (spec.is_infinite()) {
    out.net = out.core;
    return out;
  }
  out.tail = -M_PI * spec.B0 * spec.R * spec.R * spec.L() / r_max;
  const double exact_tail =
      -2.0 * M_PI * r_max * sheet_A_phi(r_max, 0.0, spec, SheetTolerance{1e-15, 1e-12});
  out.tail_uncertainty = std::abs(out.tail - exact_tail);
  out.net = out.core + out.tail;
  if (out.tail_uncertainty > tol) {
    throw ConvergenceError("far-field tail estimate uncertain beyond tolerance; increase r_max",
                           out.net, out.tail_uncertainty);
  }
  return out;
}

}  // namespace abkit::sources
