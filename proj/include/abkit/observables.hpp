#pragma once

#include "abkit/field.hpp"
#include "abkit/path.hpp"
#include "abkit/sources.hpp"
#include "abkit/vec.hpp"

namespace abkit::observables {

/// e times the line integral of A around a closed loop.
double ab_phase(const GaugeField& A, const geometry::Path& loop, double e, double tol);

/// e (x cross A_perp)_z.
double potential_oam(const Vec2& x, const Vec2& A_perp, double e);

struct PhaseOamReport {
  double r = 0.0;
  double phase = 0.0;
  double L_pot = 0.0;
  /// |phase - 2 pi L_pot|.
  double residual = 0.0;
  /// max - min of A_perp . e_phi over the sampled circle.
  double aphi_spread = 0.0;
};

/// Compares the AB phase on the circle of radius r with 2 pi L_pot at that
/// radius. Throws PreconditionError when A_perp . e_phi varies over the
/// circle by more than tol (the relation presumes an axisymmetric A_perp).
PhaseOamReport phase_oam_relation(const GaugeField& A_perp, double r, double e, double tol);

struct OamLedger {
  /// (x cross (p - e A))_z.
  double L_mech = 0.0;
  /// e (x cross A_perp)_z.
  double L_pot = 0.0;
  /// L_mech + L_pot.
  double L_gic = 0.0;
  /// (x cross (p - e A_par))_z computed directly.
  double L_gic_direct = 0.0;
};

/// A_perp from the field's flux profile by the Helmholtz module, A_par = A - A_perp.
OamLedger ledger(const Vec2& x, const Vec2& p, const GaugeField& A, double e, double tol);

struct SurfaceTerms {
  double S1 = 0.0;
  double S2 = 0.0;
  double S3 = 0.0;
  double L_pot = 0.0;
  /// Outward flux of E_par through the circle r_inf (Gauss: e).
  double gauss_inf = 0.0;
  /// Outward flux of E_par through the circle R (Gauss: 0).
  double gauss_R = 0.0;
  /// Area integral of [x cross (E_par cross B)]_z over R < r < r_inf.
  double lhs = 0.0;
  /// |lhs - (L_pot + S1 + S2 + S3)|.
  double lhs_residual = 0.0;
};

/// Surface terms of the potential-OAM identity over the annulus R < r < r_inf
/// for a static point charge e at x_e, with A0 = -(e / 2 pi) ln(|x - x_e| / R)
/// and A_perp the symmetric gauge of an infinite solenoid. Boundary normals
/// point out of the annulus. Throws IllConditionedGeometryError when x_e lies
/// within 10 surface_epsilon of either circle.
SurfaceTerms surface_terms(const Vec2& x_e, const sources::SolenoidSpec& spec, double r_inf,
                           double e, double tol);

}  // namespace abkit::observables
