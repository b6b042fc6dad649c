#pragma once

#include "abkit/field.hpp"
#include "abkit/path.hpp"
#include "abkit/quadrature.hpp"
#include "abkit/vec.hpp"

namespace abkit::geometry {

inline constexpr double kAnalyticTol = 1e-10;
inline constexpr double kQuadratureTol = 1e-6;

/// Line integral of A along a path by adaptive Gauss-Kronrod per segment.
///
/// Panels are split where a segment crosses any of the field's kink radii.
/// The tolerance is shared evenly across segments and repetitions, so the
/// returned error estimate is bounded by `tol`. A non-finite field value
/// throws EvaluationError with the segment parameter; an unreachable
/// tolerance throws ConvergenceError with the best estimate.
quad::Result line_integral(const GaugeField& field, const Path& path, double tol = kAnalyticTol);

/// Default central-difference step, 1e-5 * max(1, |x|).
double default_step(const Vec2& x);

/// Central-difference gradient; h <= 0 selects default_step(x).
Vec2 grad_scalar(const ScalarField2& f, const Vec2& x, double h = 0.0);

/// dA_y/dx - dA_x/dy by central differences.
double curl_z(const VectorField2& field, const Vec2& x, double h = 0.0);
inline double curl_z(const GaugeField& field, const Vec2& x, double h = 0.0) {
  return curl_z(field.potential(), x, h);
}

/// dA_x/dx + dA_y/dy by central differences.
double divergence(const VectorField2& field, const Vec2& x, double h = 0.0);

}  // namespace abkit::geometry
