#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>

#include "abkit/errors.hpp"
#include "abkit/quadrature.hpp"

using namespace abkit;

TEST(Quadrature, PolynomialIsExact) {
  const auto r = quad::integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
  EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-14);
  EXPECT_LE(r.error, 1e-10);
}

TEST(Quadrature, SmoothClosedForms) {
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value, M_E - 1.0, 1e-13);
  EXPECT_NEAR(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value, 2.0, 1e-13);
  EXPECT_NEAR(quad::integrate([](double x) { return 1.0 / (1.0 + x * x); }, -50.0, 50.0).value,
              2.0 * std::atan(50.0), 1e-10);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
  auto f = [](double x) { return std::cos(3 * x); };
  EXPECT_NEAR(quad::integrate(f, 1.0, 0.0).value, -std::sin(3.0) / 3.0, 1e-13);
}

TEST(Quadrature, BreakpointsHandleKinks) {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const std::array<double, 1> br{0.3};
  const auto r = quad::integrate(f, 0.0, 1.0, {}, br);
  EXPECT_NEAR(r.value, 0.5 * 0.09 + 0.5 * 0.49, 1e-14);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
  quad::Options opt;
  opt.abs_tol = 1e-9;
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
}

TEST(Quadrature, ZeroIntegrandConverges) {
  const auto r = quad::integrate([](double) { return 0.0; }, 0.0, 5.0);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Quadrature, ConvergenceErrorCarriesBestEstimate) {
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.max_intervals = 5;
  try {
    quad::integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opt);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, NonFiniteIntegrandReportsLocation) {
  try {
    quad::integrate([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, 0.0, 1.0);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_GT(e.location(), 0.5);
    EXPECT_LE(e.location(), 1.0);
  }
}

TEST(Quadrature, PeriodicTrapezoidSpectral) {
  // Mean of 1/(2 - cos t) over a period is 1/sqrt(3).
  const auto r = quad::integrate_periodic([](double t) { return 1.0 / (2.0 - std::cos(t)); }, 2 * M_PI, 1e-13);
  EXPECT_NEAR(r.value, 2 * M_PI / std::sqrt(3.0), 1e-12);
}

TEST(Quadrature, DeterministicAcrossCalls) {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(5 * x); };
  const auto a = quad::integrate(f, -3.0, 4.0);
  const auto b = quad::integrate(f, -3.0, 4.0);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.evaluations, b.evaluations);
}
