#include "abkit/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "abkit/errors.hpp"
#include "abkit/geometry.hpp"
#include "abkit/helmholtz.hpp"
#include "abkit/quadrature.hpp"

namespace abkit::observables {

double ab_phase(const GaugeField& A, const geometry::Path& loop, double e, double tol) {
  if (!loop.closed()) throw PreconditionError("AB phase needs a closed loop");
  return e * geometry::line_integral(A, loop, tol).value;
}

double potential_oam(const Vec2& x, const Vec2& A_perp, double e) { return e * cross(x, A_perp); }

PhaseOamReport phase_oam_relation(const GaugeField& A_perp, double r, double e, double tol) {
  if (!(r > 0.0)) throw PreconditionError("radius must be positive");
  constexpr int kAngles = 16;
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < kAngles; ++k) {
    const double phi = -M_PI + 2.0 * M_PI * (k + 0.5) / kAngles;
    const double a = dot(A_perp(from_polar(r, phi)), e_phi(phi));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  PhaseOamReport rep;
  rep.r = r;
  rep.aphi_spread = hi - lo;
  if (rep.aphi_spread > tol) {
    throw PreconditionError("A_perp is not axisymmetric on the circle (A_phi spread " +
                            std::to_string(rep.aphi_spread) + ")");
  }
  rep.phase = ab_phase(A_perp, geometry::Path::circle({0.0, 0.0}, r), e, 0.1 * tol);
  const Vec2 x{r, 0.0};
  rep.L_pot = potential_oam(x, A_perp(x), e);
  rep.residual = std::abs(rep.phase - 2.0 * M_PI * rep.L_pot);
  return rep;
}

OamLedger ledger(const Vec2& x, const Vec2& p, const GaugeField& A, double e, double tol) {
  if (!A.flux()) throw PreconditionError("ledger needs the field's flux profile");
  const Vec2 a = A(x);
  const Vec2 a_perp = helmholtz::transverse_from_B_2d(*A.flux(), x, tol);
  const Vec2 a_par = a - a_perp;
  OamLedger out;
  out.L_mech = cross(x, p - e * a);
  out.L_pot = potential_oam(x, a_perp, e);
  out.L_gic = out.L_mech + out.L_pot;
  out.L_gic_direct = cross(x, p - e * a_par);
  return out;
}

namespace {

// Boundary integral over a full circle: adaptive Gauss-Kronrod with a
// breakpoint at the angle nearest the charge, periodic trapezoid as fallback.
template <class F>
double circle_integral(F&& f, double nearest_phi, double tol) {
  quad::Options opt;
  opt.abs_tol = tol;
  const std::array<double, 1> breaks{nearest_phi};
  try {
    return quad::integrate(f, nearest_phi - M_PI, nearest_phi + M_PI, opt, breaks).value;
  } catch (const ConvergenceError&) {
    return quad::integrate_periodic([&](double t) { return f(nearest_phi + t); }, 2.0 * M_PI, tol)
        .value;
  }
}

}  // namespace

SurfaceTerms surface_terms(const Vec2& x_e, const sources::SolenoidSpec& spec, double r_inf,
                           double e, double tol) {
  spec.validate();
  if (!spec.is_infinite()) throw PreconditionError("surface terms use the infinite solenoid");
  const double R = spec.R;
  const double re = x_e.norm();
  if (!(re > R && re < r_inf)) throw PreconditionError("surface terms need R < |x_e| < r_inf");
  const double guard = 10.0 * sources::surface_epsilon(spec);
  if (re - R < guard || r_inf - re < guard) {
    throw IllConditionedGeometryError("charge within " + std::to_string(guard) +
                                      " of a boundary circle");
  }
  const double eps0 = 1.0;
  const double r0 = R;
  auto A0 = [&](const Vec2& x) { return -e / (2.0 * M_PI) * std::log((x - x_e).norm() / r0); };
  auto E = [&](const Vec2& x) {
    const Vec2 d = x - x_e;
    return (e / (2.0 * M_PI) / dot(d, d)) * d;
  };
  auto A_perp = [&](const Vec2& x) { return sources::eval_A_symmetric(x, spec); };
  // (x cross grad)_z A_perp, the rotation derivative of the Cartesian components.
  auto rot_dA = [&](double r, double phi) {
    const double h = 1e-5;
    return (A_perp(from_polar(r, phi + h)) - A_perp(from_polar(r, phi - h))) / (2.0 * h);
  };
  const double phi_e = x_e.phi();
  const double btol = 0.05 * tol;

  // Outward flux through the circle of radius r (normal e_r) of a radial integrand.
  auto on_circle = [&](double r, auto&& g) {
    return circle_integral([&](double phi) { return r * g(r, phi); }, phi_e, btol);
  };
  auto gauss = [&](double r, double phi) { return dot(E(from_polar(r, phi)), e_r(phi)); };
  auto s1 = [&](double r, double phi) {
    const Vec2 x = from_polar(r, phi);
    return -dot(E(x), e_r(phi)) * cross(x, A_perp(x));
  };
  auto s2 = [&](double r, double phi) {
    return A0(from_polar(r, phi)) * dot(rot_dA(r, phi), e_r(phi));
  };
  auto s3 = [&](double r, double phi) {
    const Vec2 x = from_polar(r, phi);
    return A0(x) * dot(A_perp(x), e_phi(phi));
  };

  SurfaceTerms out;
  out.gauss_inf = eps0 * on_circle(r_inf, gauss);
  out.gauss_R = eps0 * on_circle(R, gauss);
  // Divergence theorem on the annulus: outer circle minus inner circle.
  out.S1 = eps0 * (on_circle(r_inf, s1) - on_circle(R, s1));
  out.S2 = eps0 * (on_circle(r_inf, s2) - on_circle(R, s2));
  // Stokes: counterclockwise outer circle minus counterclockwise inner circle.
  out.S3 = eps0 * (on_circle(r_inf, s3) - on_circle(R, s3));
  out.L_pot = potential_oam(x_e, A_perp(x_e), e);

  // [x cross (E cross B)]_z = -B_z (x . E) for B = B_z e_z.
  quad::Options opt;
  opt.abs_tol = btol;
  auto lhs_r = [&](double r) {
    auto f = [&](double phi) {
      const Vec2 x = from_polar(r, phi);
      return -sources::eval_B_infinite(x, spec) * dot(x, E(x)) * r;
    };
    return circle_integral(f, phi_e, btol / r_inf);
  };
  const std::array<double, 1> rbreak{re};
  out.lhs = eps0 * quad::integrate(lhs_r, R * (1.0 + 1e-12), r_inf, opt, rbreak).value;
  out.lhs_residual = std::abs(out.lhs - (out.L_pot + out.S1 + out.S2 + out.S3));
  return out;
}

}  // namespace abkit::observables
