#include "abkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "abkit/errors.hpp"

namespace abkit {

std::string_view to_string(GaugeTag tag) {
  switch (tag) {
    case GaugeTag::Symmetric: return "symmetric";
    case GaugeTag::Landau2: return "landau2";
    case GaugeTag::Custom: return "custom";
    case GaugeTag::Numeric: return "numeric";
  }
  return "unknown";
}

GaugeField zero_field() {
  return GaugeField(GaugeTag::Numeric, [](const Vec2&) { return Vec2{}; },
                    FluxProfile{[](const Vec2&) { return 0.0; }, 0.0, {}});
}

}  // namespace abkit

namespace abkit::geometry {

namespace {

// Parameters t in (0, 1) where |a + t (b - a)| crosses radius rho.
void line_crossings(const StraightLine& s, double rho, std::vector<double>& out) {
  const Vec2 d = s.b - s.a;
  const double qa = dot(d, d);
  if (qa == 0.0) return;
  const double qb = 2.0 * dot(s.a, d);
  const double qc = dot(s.a, s.a) - rho * rho;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) return;
  const double sq = std::sqrt(disc);
  // Numerically stable root pair.
  const double q = -0.5 * (qb + std::copysign(sq, qb));
  for (double t : {q / qa, q != 0.0 ? qc / q : -1.0}) {
    if (t > 0.0 && t < 1.0) out.push_back(t);
  }
}

// Angles theta strictly inside the arc's sweep where |center + r e(theta)| = rho.
void arc_crossings(const CircularArc& s, double rho, std::vector<double>& out) {
  const double c = s.center.norm();
  if (c == 0.0) return;
  const double q = (rho * rho - c * c - s.radius * s.radius) / (2.0 * s.radius * c);
  if (q <= -1.0 || q >= 1.0) return;
  const double psi = std::atan2(s.center.y, s.center.x);
  const double delta = std::acos(q);
  const double lo = std::min(s.phi_start, s.phi_end);
  const double hi = std::max(s.phi_start, s.phi_end);
  for (double base : {psi + delta, psi - delta}) {
    // All 2*pi shifts of the root that fall inside [lo, hi].
    double t = base + 2.0 * M_PI * std::ceil((lo - base) / (2.0 * M_PI));
    for (; t < hi; t += 2.0 * M_PI) {
      if (t > lo) out.push_back(t);
    }
  }
}

quad::Result integrate_segment(const GaugeField& field, const Segment& seg, double tol, int index) {
  return std::visit(
      [&](const auto& s) -> quad::Result {
        using T = std::decay_t<decltype(s)>;
        quad::Options opt;
        opt.abs_tol = tol;
        std::vector<double> breaks;
        try {
          if constexpr (std::is_same_v<T, StraightLine>) {
            for (double rho : field.kink_radii()) line_crossings(s, rho, breaks);
            const Vec2 d = s.b - s.a;
            auto integrand = [&](double t) { return dot(field(s.a + t * d), d); };
            return quad::integrate(integrand, 0.0, 1.0, opt, breaks);
          } else if constexpr (std::is_same_v<T, CircularArc>) {
            for (double rho : field.kink_radii()) arc_crossings(s, rho, breaks);
            auto integrand = [&](double th) {
              const Vec2 x = s.center + from_polar(s.radius, th);
              return s.radius * dot(field(x), e_phi(th));
            };
            return quad::integrate(integrand, s.phi_start, s.phi_end, opt, breaks);
          } else {
            quad::Result sum;
            const auto subs = s.path->segments();
            const double sub_tol = tol / (static_cast<double>(s.count) * subs.size());
            for (std::size_t i = 0; i < subs.size(); ++i) {
              const auto r = integrate_segment(field, subs[i], sub_tol, static_cast<int>(i));
              sum.value += r.value;
              sum.error += r.error;
              sum.evaluations += r.evaluations;
            }
            return {s.count * sum.value, s.count * sum.error, sum.evaluations};
          }
        } catch (const EvaluationError& e) {
          throw EvaluationError("segment " + std::to_string(index) + ": " + e.what(), e.location());
        }
      },
      seg);
}

}  // namespace

quad::Result line_integral(const GaugeField& field, const Path& path, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("line_integral tolerance must be positive");
  const auto segs = path.segments();
  if (segs.empty()) return {};
  const double seg_tol = tol / segs.size();
  quad::Result total;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto r = integrate_segment(field, segs[i], seg_tol, static_cast<int>(i));
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

double default_step(const Vec2& x) { return 1e-5 * std::max(1.0, x.norm()); }

namespace {

template <class F>
auto stencil_eval(const F& f, const Vec2& p) {
  try {
    auto v = f(p);
    bool ok;
    if constexpr (std::is_same_v<decltype(v), Vec2>) {
      ok = v.finite();
    } else {
      ok = std::isfinite(v);
    }
    if (!ok) throw StencilError("non-finite value at stencil point");
    return v;
  } catch (const StencilError&) {
    throw;
  } catch (const std::exception& e) {
    throw StencilError(std::string("stencil evaluation failed: ") + e.what());
  }
}

}  // namespace

Vec2 grad_scalar(const ScalarField2& f, const Vec2& x, double h) {
  if (h <= 0.0) h = default_step(x);
  const double fxp = stencil_eval(f, x + Vec2{h, 0.0});
  const double fxm = stencil_eval(f, x - Vec2{h, 0.0});
  const double fyp = stencil_eval(f, x + Vec2{0.0, h});
  const double fym = stencil_eval(f, x - Vec2{0.0, h});
  return {(fxp - fxm) / (2.0 * h), (fyp - fym) / (2.0 * h)};
}

double curl_z(const VectorField2& field, const Vec2& x, double h) {
  if (h <= 0.0) h = default_step(x);
  const Vec2 axp = stencil_eval(field, x + Vec2{h, 0.0});
  const Vec2 axm = stencil_eval(field, x - Vec2{h, 0.0});
  const Vec2 ayp = stencil_eval(field, x + Vec2{0.0, h});
  const Vec2 aym = stencil_eval(field, x - Vec2{0.0, h});
  return (axp.y - axm.y) / (2.0 * h) - (ayp.x - aym.x) / (2.0 * h);
}

double divergence(const VectorField2& field, const Vec2& x, double h) {
  if (h <= 0.0) h = default_step(x);
  const Vec2 axp = stencil_eval(field, x + Vec2{h, 0.0});
  const Vec2 axm = stencil_eval(field, x - Vec2{h, 0.0});
  const Vec2 ayp = stencil_eval(field, x + Vec2{0.0, h});
  const Vec2 aym = stencil_eval(field, x - Vec2{0.0, h});
  return (axp.x - axm.x) / (2.0 * h) + (ayp.y - aym.y) / (2.0 * h);
}

}  // namespace abkit::geometry
