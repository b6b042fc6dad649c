#pragma once

#include <optional>

#include "abkit/field.hpp"
#include "abkit/vec.hpp"

namespace abkit::sources {

/// Solenoid along the z axis, centred at the origin. Natural units with
/// mu0 = 1, so the surface current density is K = B0.
struct SolenoidSpec {
  double R = 1.0;
  double B0 = 1.0;
  /// Half-length L; nullopt is the infinitely long solenoid.
  std::optional<double> half_length;

  static SolenoidSpec infinite(double R, double B0) { return {R, B0, std::nullopt}; }
  static SolenoidSpec finite(double R, double B0, double L) { return {R, B0, L}; }

  bool is_infinite() const noexcept { return !half_length.has_value(); }
  double L() const;
  /// Interior flux pi R^2 B0.
  double flux() const noexcept { return M_PI * R * R * B0; }
  /// Throws PreconditionError unless R > 0, L > 0 (when finite) and all finite.
  void validate() const;
};

// ---- infinite solenoid -------------------------------------------------

/// Symmetric (Coulomb) gauge: B0 r/2 e_phi inside, B0 R^2/(2r) e_phi outside.
Vec2 eval_A_symmetric(const Vec2& x, const SolenoidSpec& spec);
/// Generalized second Landau gauge: symmetric + grad(B0 x y / 2).
Vec2 eval_A_landau2(const Vec2& x, const SolenoidSpec& spec);
/// B0 theta(R - r); the wall r = R belongs to the interior.
double eval_B_infinite(const Vec2& x, const SolenoidSpec& spec);

/// Gauge function B0 x y / 2 taking the symmetric gauge to landau2.
double landau2_chi(const Vec2& x, const SolenoidSpec& spec);

FluxProfile infinite_flux_profile(const SolenoidSpec& spec);
GaugeField symmetric_gauge(const SolenoidSpec& spec);
GaugeField landau2_gauge(const SolenoidSpec& spec);

// ---- finite solenoid ---------------------------------------------------

/// How the surface-current sheet integral is evaluated.
enum class SheetRoute {
  /// Adaptive quadrature over z' of the azimuthal loop integral.
  Surface2D,
  /// z' integrated in closed form, adaptive quadrature over phi' only.
  AxialClosedForm,
};

/// Quadrature acceptance: each component stops at error <= max(abs, rel*|value|).
struct SheetTolerance {
  double abs = 1e-12;
  double rel = 1e-10;
};

struct FiniteSolenoidField {
  Vec3 A;
  Vec3 B;
  double A_phi = 0.0;
  double B_rho = 0.0;
  double B_z = 0.0;
};

/// Default exclusion distance from the current sheet, 1e-3 R.
double surface_epsilon(const SolenoidSpec& spec);

/// A and B of the ideal finite sheet at a 3-D point. Throws
/// NearSingularError within surface_epsilon of the sheet.
FiniteSolenoidField eval_finite_solenoid(const Point3& x, const SolenoidSpec& spec,
                                         SheetTolerance tol = {},
                                         SheetRoute route = SheetRoute::Surface2D);

/// Cylindrical components at (rho, z). No sheet-proximity check; callers
/// integrating across the sheet use these directly.
double sheet_A_phi(double rho, double z, const SolenoidSpec& spec, SheetTolerance tol,
                   SheetRoute route = SheetRoute::AxialClosedForm);
double sheet_B_z(double rho, double z, const SolenoidSpec& spec, SheetTolerance tol,
                 SheetRoute route = SheetRoute::AxialClosedForm);
double sheet_B_rho(double rho, double z, const SolenoidSpec& spec, SheetTolerance tol,
                   SheetRoute route = SheetRoute::AxialClosedForm);

/// Leading far-field terms in the z = 0 plane for r >> R, L.
double far_field_A_phi(double r, const SolenoidSpec& spec);
double far_field_B_z(double r, const SolenoidSpec& spec);

/// Flux of B_z through the annulus r_lo < r < r_hi of the plane z.
double flux_through_annulus(const SolenoidSpec& spec, double z, double r_lo, double r_hi,
                            double tol);

struct NetFlux {
  /// Quadrature of B_z 2 pi r over 0 < r < r_max.
  double core = 0.0;
  /// Asymptotic estimate of the flux beyond r_max from the r^-3 tail.
  double tail = 0.0;
  /// core + tail.
  double net = 0.0;
  /// |tail - exact tail via Stokes, -2 pi r_max A_phi(r_max)|.
  double tail_uncertainty = 0.0;
};

/// Net flux through the z = 0 plane. For the infinite solenoid the core is
/// pi R^2 B0 and the tail vanishes. Throws ConvergenceError when the tail
/// uncertainty exceeds tol.
NetFlux net_flux_z0(const SolenoidSpec& spec, double r_max, double tol);

}  // namespace abkit::sources
