#include "abkit/helmholtz.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "abkit/errors.hpp"
#include "abkit/geometry.hpp"
#include "abkit/quadrature.hpp"

namespace abkit::helmholtz {

namespace {

// Positive roots rho of |x + rho u|^2 = J^2 strictly inside (0, limit).
void ray_crossings(const Vec2& x, const Vec2& u, double J, double limit, std::vector<double>& out) {
  const double b = dot(x, u);
  const double c = dot(x, x) - J * J;
  const double disc = b * b - c;
  if (disc <= 0.0) return;
  const double s = std::sqrt(disc);
  for (double rho : {-b - s, -b + s}) {
    if (rho > 0.0 && rho < limit) out.push_back(rho);
  }
}

// Distance along direction u from x (inside the disk) to the circle of radius Rb.
double exit_distance(const Vec2& x, const Vec2& u, double Rb) {
  const double b = dot(x, u);
  const double c = dot(x, x) - Rb * Rb;
  return -b + std::sqrt(std::max(0.0, b * b - c));
}

void check_profile(const FluxProfile& p) {
  if (!p.bz) throw PreconditionError("flux profile has no B_z evaluator");
  if (!std::isfinite(p.support_radius) || p.support_radius < 0.0) {
    throw PreconditionError("flux profile must declare a finite compact support radius");
  }
}

// Weighted area integral (1/2pi) Int src(x', |x - x'|) * kernel(x - x') d^2x'
// where the kernel is given in two forms: `ray(u, rho)` already multiplied by
// the polar area element rho, and `plane(d)` for the tensor-product route.
template <class Source, class RayKernel, class PlaneKernel>
double area_integral(const FluxProfile& p, Source&& src, const Vec2& x, RayKernel&& ray,
                     PlaneKernel&& plane, double tol) {
  const double Rb = p.support_radius;
  if (Rb == 0.0) return 0.0;
  // Uniform seed panels so off-centre features narrower than a single
  // Kronrod panel are not stepped over.
  constexpr int kSeedPanels = 32;
  constexpr int kRadialSeeds = 16;
  const double outer_tol = 2.0 * M_PI * 0.5 * tol;

  if (x.r() <= Rb) {
    quad::Options outer;
    outer.abs_tol = outer_tol;
    outer.max_intervals = 20000;
    quad::Options inner;
    inner.abs_tol = 0.05 * outer_tol / (2.0 * M_PI);
    inner.max_intervals = 20000;
    auto over_theta = [&](double theta) {
      const Vec2 u = e_r(theta);
      const double limit = exit_distance(x, u, Rb);
      if (limit <= 0.0) return 0.0;
      std::vector<double> breaks;
      for (int i = 1; i < kRadialSeeds; ++i) breaks.push_back(limit * i / kRadialSeeds);
      for (double J : p.jump_radii) ray_crossings(x, u, J, limit, breaks);
      auto over_rho = [&](double rho) { return src(x + rho * u, rho) * ray(u, rho); };
      return quad::integrate(over_rho, 0.0, limit, inner, breaks).value;
    };
    std::array<double, kSeedPanels + 1> theta_break{};
    for (int i = 0; i <= kSeedPanels; ++i) theta_break[i] = 2.0 * M_PI * i / kSeedPanels;
    return quad::integrate(over_theta, 0.0, 2.0 * M_PI, outer, theta_break).value / (2.0 * M_PI);
  }

  quad::Options outer;
  outer.abs_tol = outer_tol;
  outer.max_intervals = 20000;
  quad::Options inner;
  inner.abs_tol = 0.05 * outer_tol / (Rb * Rb);
  inner.max_intervals = 20000;
  const double phix = x.phi();
  std::array<double, kSeedPanels + 1> phi_break{};
  for (int i = 0; i <= kSeedPanels; ++i) phi_break[i] = phix - M_PI + 2.0 * M_PI * i / kSeedPanels;
  auto over_r = [&](double rp) {
    auto over_phi = [&](double ph) {
      const Vec2 xp = from_polar(rp, ph);
      const Vec2 d = x - xp;
      return src(xp, d.norm()) * plane(d);
    };
    return rp * quad::integrate(over_phi, phix - M_PI, phix + M_PI, inner, phi_break).value;
  };
  std::vector<double> r_break(p.jump_radii.begin(), p.jump_radii.end());
  for (int i = 1; i < kRadialSeeds; ++i) r_break.push_back(Rb * i / kRadialSeeds);
  return quad::integrate(over_r, 0.0, Rb, outer, r_break).value / (2.0 * M_PI);
}

template <class Source>
Vec2 transverse_impl(const FluxProfile& p, Source&& src, const Vec2& x, double tol) {
  check_profile(p);
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  // About x the kernel times rho reduces to (sin theta, -cos theta).
  const double ax = area_integral(
      p, src, x, [](const Vec2& u, double) { return u.y; },
      [](const Vec2& d) { return -d.y / dot(d, d); }, tol);
  const double ay = area_integral(
      p, src, x, [](const Vec2& u, double) { return -u.x; },
      [](const Vec2& d) { return d.x / dot(d, d); }, tol);
  return {ax, ay};
}

}  // namespace

Vec2 transverse_from_B_2d(const FluxProfile& bz, const Vec2& x, double tol) {
  return transverse_impl(bz, [&](const Vec2& xp, double) { return bz.bz(xp); }, x, tol);
}

double stream_function(const FluxProfile& bz, const Vec2& x, double r0, double tol) {
  check_profile(bz);
  if (!(r0 > 0.0)) throw PreconditionError("reference length r0 must be positive");
  auto src = [&](const Vec2& xp, double) { return bz.bz(xp); };
  return area_integral(
      bz, src, x, [r0](const Vec2&, double rho) { return rho > 0.0 ? rho * std::log(rho / r0) : 0.0; },
      [r0](const Vec2& d) { return std::log(d.norm() / r0); }, tol);
}

Vec2 longitudinal_part(const GaugeField& field, const Vec2& x, double tol) {
  if (!field.flux()) {
    throw PreconditionError("field does not declare a compactly supported flux profile");
  }
  return field(x) - transverse_from_B_2d(*field.flux(), x, tol);
}

GaugeField transverse_field(const GaugeField& field, double tol) {
  if (!field.flux()) {
    throw PreconditionError("field does not declare a compactly supported flux profile");
  }
  const FluxProfile flux = *field.flux();
  return GaugeField(
      GaugeTag::Numeric, [flux, tol](const Vec2& x) { return transverse_from_B_2d(flux, x, tol); },
      flux, flux.jump_radii);
}

GaugeField longitudinal_field(const GaugeField& field, double tol) {
  if (!field.flux()) {
    throw PreconditionError("field does not declare a compactly supported flux profile");
  }
  const double support = field.flux()->support_radius;
  std::vector<double> kinks(field.kink_radii().begin(), field.kink_radii().end());
  return GaugeField(
      GaugeTag::Numeric, [field, tol](const Vec2& x) { return longitudinal_part(field, x, tol); },
      FluxProfile{[](const Vec2&) { return 0.0; }, support, {}}, std::move(kinks));
}

GaugeField apply_gauge(const GaugeField& field, ScalarField2 chi) {
  auto grad = [chi = std::move(chi)](const Vec2& x) { return geometry::grad_scalar(chi, x); };
  return apply_gauge_gradient(field, std::move(grad));
}

GaugeField apply_gauge_gradient(const GaugeField& field, VectorField2 grad_chi) {
  std::vector<double> kinks(field.kink_radii().begin(), field.kink_radii().end());
  return GaugeField(
      GaugeTag::Custom,
      [base = field, grad = std::move(grad_chi)](const Vec2& x) { return base(x) + grad(x); },
      field.flux(), std::move(kinks));
}

// ---- static reduction of the causal decomposition -----------------------

StaticReductionReport static_reduction_check(const GaugeField& field,
                                             std::span<const Vec2> samples, double tol) {
  if (!field.flux()) {
    throw PreconditionError("field does not declare a compactly supported flux profile");
  }
  const FluxProfile& flux = *field.flux();
  check_profile(flux);
  constexpr double kObserveTime = 0.0;
  constexpr double kLightSpeed = 1.0;

  // Static history: every retarded time sees the same field.
  auto history_A = [&field](const Vec2& x, double /*t*/) { return field(x); };
  auto history_B = [&flux](const Vec2& x, double /*t*/) { return flux.bz(x); };

  StaticReductionReport rep;
  rep.samples = static_cast<int>(samples.size());

  // Source of the time-derivative term, [dA/dt] at retarded times.
  const double span = std::max(flux.support_radius, 1.0) * 4.0;
  const double dt = 1e-3;
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      const Vec2 xs{span * i / 4.0, span * j / 4.0};
      const double t_ret = kObserveTime - xs.norm() / kLightSpeed;
      const Vec2 dadt = (history_A(xs, t_ret + dt) - history_A(xs, t_ret - dt)) / (2.0 * dt);
      rep.time_term = std::max(rep.time_term, dadt.norm());
    }
  }

  auto retarded_transverse = [&](const Vec2& x) {
    return transverse_impl(
        flux,
        [&](const Vec2& xp, double dist) { return history_B(xp, kObserveTime - dist / kLightSpeed); },
        x, tol);
  };

  for (const Vec2& x : samples) {
    const Vec2 t_ret = retarded_transverse(x);
    const Vec2 t_now = transverse_from_B_2d(flux, x, tol);
    rep.retarded_vs_instantaneous = std::max(rep.retarded_vs_instantaneous, (t_ret - t_now).norm());

    const Vec2 a_par = longitudinal_part(field, x, tol);
    rep.decomposition = std::max(rep.decomposition, (field(x) - (t_ret + a_par)).norm());

    const double h = 1e-4 * std::max(1.0, x.norm());
    rep.transverse_divergence =
        std::max(rep.transverse_divergence, std::abs(geometry::divergence(retarded_transverse, x, h)));
    auto remainder = [&](const Vec2& y) { return field(y) - retarded_transverse(y); };
    rep.longitudinal_curl = std::max(rep.longitudinal_curl, std::abs(geometry::curl_z(remainder, x, h)));
  }
  rep.max_residual = std::max({rep.time_term, rep.retarded_vs_instantaneous, rep.decomposition,
                               rep.transverse_divergence, rep.longitudinal_curl});
  return rep;
}

StaticReductionReport static_reduction_check(const GaugeField& field, double tol) {
  const double scale = field.flux() && field.flux()->support_radius > 0.0
                           ? field.flux()->support_radius
                           : 1.0;
  std::vector<Vec2> samples;
  for (double r : {0.4, 2.0, 3.5}) {
    for (double phi : {0.3, 2.1, -2.2}) samples.push_back(from_polar(r * scale, phi));
  }
  return static_reduction_check(field, samples, tol);
}

}  // namespace abkit::helmholtz
