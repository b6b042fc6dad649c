#include "abkit/dewitt.hpp"

#include <array>
#include <cmath>

#include "abkit/errors.hpp"
#include "abkit/geometry.hpp"

namespace abkit::dewitt {

using geometry::Path;

PathFamily PathFamily::looped_radial(int n) {
  if (n < 1) throw PreconditionError("looped_radial needs n >= 1");
  return PathFamily(Kind::LoopedRadial, n);
}

std::string PathFamily::name() const {
  switch (kind_) {
    case Kind::RadialStraight: return "radial_straight";
    case Kind::PolygonalXY: return "polygonal_xy";
    case Kind::LoopedRadial: return "looped_radial_" + std::to_string(n_);
  }
  return "unknown";
}

Path PathFamily::loop(const Vec2& x) const {
  if (kind_ != Kind::LoopedRadial) throw PreconditionError("family has no loop component");
  const Vec2 c = x / std::sqrt(2.0 * n_);
  const std::array<Vec2, 4> v{Vec2{0.0, 0.0}, Vec2{0.0, c.y}, c, Vec2{c.x, 0.0}};
  return Path::polyline(v, true);
}

Path PathFamily::operator()(const Vec2& x) const {
  const Vec2 origin{0.0, 0.0};
  switch (kind_) {
    case Kind::RadialStraight: return Path::line(origin, x);
    case Kind::PolygonalXY: {
      const std::array<Vec2, 3> v{origin, Vec2{0.0, x.y}, x};
      return Path::polyline(v);
    }
    case Kind::LoopedRadial: return loop(x).repeated(n_) + Path::line(origin, x);
  }
  return {};
}

double dewitt_lambda(const GaugeField& A, const PathFamily& fam, const Vec2& x, double tol) {
  return geometry::line_integral(A, fam(x), tol).value;
}

Vec2 dewitt_potential(const GaugeField& A, const PathFamily& fam, const Vec2& x, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const double h = geometry::default_step(x);
  const double lambda_tol = 0.25 * tol * h;
  auto lambda = [&](const Vec2& y) { return dewitt_lambda(A, fam, y, lambda_tol); };
  return A(x) - geometry::grad_scalar(lambda, x, h);
}

GaugeField dewitt_field(const GaugeField& A, const PathFamily& fam, double tol) {
  std::vector<double> kinks(A.kink_radii().begin(), A.kink_radii().end());
  return GaugeField(
      GaugeTag::Numeric, [A, fam, tol](const Vec2& x) { return dewitt_potential(A, fam, x, tol); },
      A.flux(), std::move(kinks));
}

LoopReport loop_gauge_correspondence(const GaugeField& A, int n, const Vec2& x, double tol) {
  if (!A.flux()) throw PreconditionError("field must declare its flux profile");
  const double R = A.flux()->support_radius;
  const double B0 = A.flux()->bz({0.0, 0.0});
  const double r = x.norm();
  if (n < 1) throw PreconditionError("loop count must be >= 1");
  if (!(r > R && r < std::sqrt(2.0 * n) * R)) {
    throw PreconditionError("loop correspondence requires R < |x| < sqrt(2n) R");
  }
  const auto looped = PathFamily::looped_radial(n);
  LoopReport rep;
  rep.n = n;
  rep.x = x;
  rep.difference = dewitt_potential(A, looped, x, tol) -
                   dewitt_potential(A, PathFamily::radial_straight(), x, tol);
  rep.expected = {0.5 * B0 * x.y, 0.5 * B0 * x.x};
  rep.loop_integral = geometry::line_integral(A, looped.loop(x).repeated(n), tol).value;
  rep.loop_expected = -0.5 * B0 * x.x * x.y;
  rep.residual = (rep.difference - rep.expected).norm();
  return rep;
}

}  // namespace abkit::dewitt
