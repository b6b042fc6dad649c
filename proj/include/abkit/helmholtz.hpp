#pragma once

#include <span>
#include <vector>

#include "abkit/field.hpp"
#include "abkit/vec.hpp"

namespace abkit::helmholtz {

/// Transverse part of a planar potential from its curl:
///   A_perp(x) = (1/2pi) Int B_z(x') (-(y - y'), x - x') / |x - x'|^2 d^2x',
/// i.e. minus the curl of the logarithmic-kernel stream function, with the
/// kernel gradient taken under the integral. Inside the support the integral
/// is done in polar coordinates about x (the 1/|x - x'| singularity cancels
/// against the area element); outside it is a tensor product in the
/// support's own polar coordinates. Each component has error <= tol.
Vec2 transverse_from_B_2d(const FluxProfile& bz, const Vec2& x, double tol);

/// Stream function (1/2pi) Int B_z(x') ln(|x - x'| / r0) d^2x'. Its
/// rotated gradient (d_y psi, -d_x psi) is minus A_perp for any r0 > 0.
double stream_function(const FluxProfile& bz, const Vec2& x, double r0, double tol);

/// A(x) - A_perp(x). Requires the field to declare its flux profile;
/// throws PreconditionError otherwise.
Vec2 longitudinal_part(const GaugeField& field, const Vec2& x, double tol);

/// Numeric gauge fields evaluating A_perp / A_par pointwise by quadrature.
GaugeField transverse_field(const GaugeField& field, double tol);
GaugeField longitudinal_field(const GaugeField& field, double tol);

/// A + grad(chi); the gradient is taken with the central-difference stencil.
GaugeField apply_gauge(const GaugeField& field, ScalarField2 chi);
/// A + grad_chi for a gauge function whose gradient is known analytically.
GaugeField apply_gauge_gradient(const GaugeField& field, VectorField2 grad_chi);

struct StaticReductionReport {
  /// max |d/dt A| of the static history over the sampled sources and delays.
  double time_term = 0.0;
  /// max |curl term with retarded sources - transverse_from_B_2d|.
  double retarded_vs_instantaneous = 0.0;
  /// max |div A_perp| at the samples.
  double transverse_divergence = 0.0;
  /// max |curl (A - A_perp)| at the samples.
  double longitudinal_curl = 0.0;
  /// max |A - (A_perp + A_par + time term)| at the samples.
  double decomposition = 0.0;
  double max_residual = 0.0;
  int samples = 0;
};

/// Evaluates the causal (retarded) decomposition for a static field: the
/// time-derivative term's source vanishes, the retarded curl term equals the
/// instantaneous transverse part, and the remainder is irrotational.
StaticReductionReport static_reduction_check(const GaugeField& field,
                                             std::span<const Vec2> samples, double tol);
/// Uses nine sample points at 0.4, 2 and 3.5 support radii.
StaticReductionReport static_reduction_check(const GaugeField& field, double tol);

}  // namespace abkit::helmholtz
