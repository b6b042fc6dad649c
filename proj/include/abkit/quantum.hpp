#pragma once

#include <complex>
#include <vector>

#include "abkit/sources.hpp"

namespace abkit::quantum {

/// J_nu(x) for nu >= 0, x >= 0. Throws PreconditionError for negative
/// arguments and EvaluationError when the result is not finite.
double bessel_j(double nu, double x, double tol = 1e-12);

struct AlphaResult {
  double alpha = 0.0;
  /// Quadrature of B_z r' over r < r' < r_cut.
  double core = 0.0;
  /// -1/2 B0 R^2 L / r_cut from the r^-3 asymptote.
  double tail = 0.0;
  double r_cut = 0.0;
};

/// alpha = m + e Int_r^inf B_z(r', z) r' dr' for a finite solenoid, with
/// r_cut = 100 max(R, L, r).
AlphaResult alpha_exponent(int m, double r, double z, const sources::SolenoidSpec& spec, double e,
                           double tol);

struct EigenMode {
  int m = 0;
  double k = 1.0;
  double M = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Infinite-solenoid mode with alpha = m - beta.
  static EigenMode infinite(int m, double k, double M, double beta);
  /// Bessel order |alpha|.
  double order() const { return alpha < 0.0 ? -alpha : alpha; }
};

/// (1/sqrt(2 pi)) J_|alpha|(k r) exp(i m phi - i k^2 t / (2 M)).
std::complex<double> eigenmode_value(const EigenMode& mode, double r, double phi, double t);

/// Sorted orders |m - beta| for m_lo <= m <= m_hi.
std::vector<double> order_set(double beta, int m_lo, int m_hi);

/// For integer beta, the orders over m in [beta - m_max, beta + m_max] equal
/// the free orders |m'| for m' in [-m_max, m_max] exactly. False otherwise.
bool integer_flux_degenerate(double beta, int m_max);

}  // namespace abkit::quantum
