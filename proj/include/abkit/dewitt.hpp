#pragma once

#include <string>

#include "abkit/field.hpp"
#include "abkit/path.hpp"
#include "abkit/vec.hpp"

namespace abkit::dewitt {

/// Rule assigning to each field point x a path from the origin to x.
class PathFamily {
 public:
  enum class Kind { RadialStraight, PolygonalXY, LoopedRadial };

  /// Straight segment origin -> x.
  static PathFamily radial_straight() { return PathFamily(Kind::RadialStraight, 0); }
  /// origin -> (0, y) -> (x, y).
  static PathFamily polygonal_xy() { return PathFamily(Kind::PolygonalXY, 0); }
  /// n turns of the rectangle origin -> (0,b) -> (a,b) -> (a,0) -> origin with
  /// (a, b) = x / sqrt(2n), followed by the straight segment origin -> x.
  static PathFamily looped_radial(int n);

  Kind kind() const noexcept { return kind_; }
  int loops() const noexcept { return n_; }
  std::string name() const;

  geometry::Path operator()(const Vec2& x) const;
  /// The closed rectangle of looped_radial at x (one traversal).
  geometry::Path loop(const Vec2& x) const;

 private:
  PathFamily(Kind k, int n) : kind_(k), n_(n) {}
  Kind kind_;
  int n_;
};

/// Lambda(x): line integral of A along fam(x).
double dewitt_lambda(const GaugeField& A, const PathFamily& fam, const Vec2& x, double tol);

/// A(x) - grad Lambda(x), the gradient by central differences of Lambda.
/// Lambda is integrated to tol * h / 4 so the stencil keeps the result within tol.
Vec2 dewitt_potential(const GaugeField& A, const PathFamily& fam, const Vec2& x, double tol);

/// Gauge-invariant potential as a field for a fixed family.
GaugeField dewitt_field(const GaugeField& A, const PathFamily& fam, double tol);

struct LoopReport {
  int n = 0;
  Vec2 x;
  /// A~(looped_radial(n)) - A~(radial_straight) at x.
  Vec2 difference;
  /// grad(1/2 B0 x y) = (B0 y / 2, B0 x / 2).
  Vec2 expected;
  /// n-fold loop integral and its value -1/2 B0 x y.
  double loop_integral = 0.0;
  double loop_expected = 0.0;
  double residual = 0.0;
};

/// Checks A~(C^n_loop + C_I) - A~(C_I) = grad(1/2 B0 x y) at x. R and B0 are
/// read from the field's flux profile (support radius, B_z at the origin).
/// Requires R < |x| < sqrt(2n) R; throws PreconditionError otherwise.
LoopReport loop_gauge_correspondence(const GaugeField& A, int n, const Vec2& x, double tol);

}  // namespace abkit::dewitt
