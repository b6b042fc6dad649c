#include "abkit/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "abkit/errors.hpp"
#include "abkit/quadrature.hpp"

namespace abkit::quantum {

double bessel_j(double nu, double x, double tol) {
  if (!(nu >= 0.0) || !(x >= 0.0)) throw PreconditionError("bessel_j needs nu >= 0 and x >= 0");
  if (!std::isfinite(nu) || !std::isfinite(x)) throw PreconditionError("bessel_j arguments must be finite");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double v = std::cyl_bessel_j(nu, x);
  if (!std::isfinite(v)) throw EvaluationError("bessel_j overflow", x);
  return v;
}

AlphaResult alpha_exponent(int m, double r, double z, const sources::SolenoidSpec& spec, double e,
                           double tol) {
  spec.validate();
  if (spec.is_infinite()) throw PreconditionError("alpha_exponent needs a finite solenoid");
  if (!(r > 0.0)) throw PreconditionError("radius must be positive");
  AlphaResult out;
  out.r_cut = 100.0 * std::max({spec.R, spec.L(), r});
  const sources::SheetTolerance field_tol{1e-3 * tol / out.r_cut, 1e-11};
  // In u = ln r' the integrand is B_z r'^2.
  auto f = [&](double u) {
    const double rp = std::exp(u);
    return sources::sheet_B_z(rp, z, spec, field_tol) * rp * rp;
  };
  quad::Options opt;
  opt.abs_tol = 0.5 * tol;
  opt.max_intervals = 20000;
  std::vector<double> breaks;
  for (double b : {spec.R, spec.L()}) {
    if (b > r && b < out.r_cut) breaks.push_back(std::log(b));
  }
  std::sort(breaks.begin(), breaks.end());
  out.core = quad::integrate(f, std::log(r), std::log(out.r_cut), opt, breaks).value;
  out.tail = -0.5 * spec.B0 * spec.R * spec.R * spec.L() / out.r_cut;
  out.alpha = m + e * (out.core + out.tail);
  return out;
}

EigenMode EigenMode::infinite(int m, double k, double M, double beta) {
  if (!(k > 0.0) || !(M > 0.0)) throw PreconditionError("mode needs k > 0 and M > 0");
  return EigenMode{m, k, M, m - beta, beta};
}

std::complex<double> eigenmode_value(const EigenMode& mode, double r, double phi, double t) {
  const double radial = bessel_j(mode.order(), mode.k * r) / std::sqrt(2.0 * M_PI);
  const double arg = mode.m * phi - mode.k * mode.k / (2.0 * mode.M) * t;
  return std::polar(radial, arg);
}

std::vector<double> order_set(double beta, int m_lo, int m_hi) {
  std::vector<double> out;
  for (int m = m_lo; m <= m_hi; ++m) out.push_back(std::abs(m - beta));
  std::sort(out.begin(), out.end());
  return out;
}

bool integer_flux_degenerate(double beta, int m_max) {
  if (beta != std::round(beta)) return false;
  const int b = static_cast<int>(beta);
  return order_set(beta, b - m_max, b + m_max) == order_set(0.0, -m_max, m_max);
}

}  // namespace abkit::quantum
