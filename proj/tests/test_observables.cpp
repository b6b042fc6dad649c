#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "abkit/errors.hpp"
#include "abkit/geometry.hpp"
#include "abkit/helmholtz.hpp"
#include "abkit/observables.hpp"
#include "abkit/sources.hpp"

using namespace abkit;
using namespace abkit::observables;
using geometry::Path;

namespace {

const auto kSpec = sources::SolenoidSpec::infinite(1, 1);
constexpr double kE = -1.0;

}  // namespace

TEST(AbPhase, GaugesAndShapes) {
  const auto sym = sources::symmetric_gauge(kSpec);
  const auto l2 = sources::landau2_gauge(kSpec);
  const std::array<Vec2, 4> sq{Vec2{-1.5, -1.5}, Vec2{1.5, -1.5}, Vec2{1.5, 1.5}, Vec2{-1.5, 1.5}};
  for (const auto& g : {sym, l2}) {
    EXPECT_NEAR(ab_phase(g, Path::circle({0, 0}, 2), kE, 1e-10), -M_PI, 1e-9);
    EXPECT_NEAR(ab_phase(g, Path::polyline(sq, true), kE, 1e-10), -M_PI, 1e-9);
    EXPECT_NEAR(ab_phase(g, Path::polygon_ellipse({0, 0}, 3, 1.5, 64), kE, 1e-10), -M_PI, 1e-9);
    EXPECT_NEAR(ab_phase(g, Path::circle({0.2, -0.1}, 3, 1.0).repeated(3), kE, 1e-10), -3 * M_PI, 1e-9);
    EXPECT_NEAR(ab_phase(g, Path::circle({0, 0}, 2).reversed(), kE, 1e-10), M_PI, 1e-9);
    EXPECT_NEAR(ab_phase(g, Path::circle({5, 0}, 0.5), kE, 1e-10), 0.0, 1e-9);
  }
  EXPECT_THROW(ab_phase(sym, Path::line({0, 0}, {1, 1}), kE, 1e-10), PreconditionError);
}

TEST(PotentialOam, Values) {
  const auto sym = sources::symmetric_gauge(kSpec);
  for (double r : {2.0, 5.0, 37.0}) {
    const Vec2 x = from_polar(r, 0.4);
    EXPECT_NEAR(potential_oam(x, sym(x), kE), -0.5, 1e-14);
  }
  EXPECT_EQ(potential_oam({1, 2}, {2, 4}, kE), 0.0);
}

TEST(PhaseOam, RelationAtSeveralRadii) {
  const auto sym = sources::symmetric_gauge(kSpec);
  for (double r : {2.0, 5.0, 10.0}) {
    const auto rep = phase_oam_relation(sym, r, kE, 1e-9);
    EXPECT_NEAR(rep.phase, -M_PI, 1e-9);
    EXPECT_NEAR(rep.L_pot, -0.5, 1e-12);
    EXPECT_LT(rep.residual, 1e-8);
  }
  const auto off = phase_oam_relation(sources::symmetric_gauge(sources::SolenoidSpec::infinite(1, 0)), 3, kE, 1e-9);
  EXPECT_EQ(off.phase, 0.0);
  EXPECT_EQ(off.L_pot, 0.0);
}

TEST(PhaseOam, TransverseFromQuadrature) {
  const auto t = helmholtz::transverse_field(sources::landau2_gauge(kSpec), 1e-9);
  const auto rep = phase_oam_relation(t, 2.0, kE, 1e-6);
  EXPECT_LT(rep.residual, 1e-6);
}

TEST(PhaseOam, RejectsNonAxisymmetric) {
  EXPECT_THROW(phase_oam_relation(sources::landau2_gauge(kSpec), 2, kE, 1e-6), PreconditionError);
  EXPECT_THROW(phase_oam_relation(sources::symmetric_gauge(kSpec), 0, kE, 1e-6), PreconditionError);
}

TEST(Ledger, RestingElectronOutside) {
  const auto led = ledger({2, 0}, {0, 0}, sources::symmetric_gauge(kSpec), kE, 1e-8);
  EXPECT_NEAR(led.L_mech, 0.5, 1e-12);
  EXPECT_NEAR(led.L_pot, -0.5, 1e-7);
  EXPECT_NEAR(led.L_gic, 0.0, 1e-7);
  EXPECT_NEAR(led.L_gic_direct, 0.0, 1e-7);
}

TEST(Ledger, UncoupledCircularMomentum) {
  const double m0 = 2.0, r = 3.0;
  const Vec2 x = from_polar(r, 0.8);
  const auto led = ledger(x, (m0 / r) * e_phi(0.8), sources::symmetric_gauge(kSpec), 0.0, 1e-8);
  EXPECT_NEAR(led.L_mech, m0, 1e-12);
  EXPECT_NEAR(led.L_gic, m0, 1e-12);
  EXPECT_EQ(led.L_pot, 0.0);
}

TEST(Ledger, GaugeInvariantForSameState) {
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> u(-4, 4);
  const auto sym = sources::symmetric_gauge(kSpec);
  const auto l2 = sources::landau2_gauge(kSpec);
  for (int i = 0; i < 20; ++i) {
    const Vec2 x{u(g), u(g)};
    const Vec2 p{u(g), u(g)};
    // Same physical state in the landau2 gauge: p' = p + e grad chi.
    const Vec2 p2 = p + kE * Vec2{0.5 * x.y, 0.5 * x.x};
    const auto a = ledger(x, p, sym, kE, 1e-6);
    const auto b = ledger(x, p2, l2, kE, 1e-6);
    EXPECT_NEAR(a.L_gic, a.L_mech + a.L_pot, 1e-12);
    EXPECT_NEAR(a.L_gic, a.L_gic_direct, 2e-6);
    EXPECT_NEAR(b.L_gic, b.L_gic_direct, 2e-6);
    EXPECT_NEAR(a.L_pot, b.L_pot, 2e-6);
    EXPECT_NEAR(a.L_gic, b.L_gic, 2e-6);
    EXPECT_NEAR(a.L_mech, b.L_mech, 1e-9);
  }
}

TEST(SurfaceTerms, CancellationAndGauss) {
  for (double r_inf : {20.0, 50.0, 100.0}) {
    const auto s = surface_terms({3, 0}, kSpec, r_inf, kE, 1e-10);
    EXPECT_NEAR(s.S1, 0.5, 5e-3) << r_inf;
    EXPECT_LT(std::abs(s.S1 + s.L_pot), 1e-2 * std::abs(s.L_pot));
    EXPECT_LT(std::abs(s.S2 + s.S3), 1e-2 * std::abs(s.S2));
    EXPECT_NEAR(s.gauss_inf, kE, 1e-8);
    EXPECT_NEAR(s.gauss_R, 0.0, 1e-8);
    EXPECT_LT(s.lhs_residual, 1e-2);
  }
}

TEST(SurfaceTerms, S2AnalyticOracle) {
  // With the charge outside R, the mean of ln|x - x_e| over the outer circle is
  // ln r_inf; over the inner circle ln|x_e|. That makes S2 = e B0 R^2 ln(r_inf/|x_e|) / 2.
  const Vec2 xe{2.5, 1.0};
  const double r_inf = 40;
  const auto s = surface_terms(xe, kSpec, r_inf, kE, 1e-11);
  EXPECT_NEAR(s.S2, kE * 0.5 * std::log(r_inf / xe.norm()), 1e-8);
}

TEST(SurfaceTerms, NoChargeNoTerms) {
  const auto s = surface_terms({3, 0}, kSpec, 50, 0.0, 1e-10);
  EXPECT_EQ(s.S1, 0.0);
  EXPECT_EQ(s.S2, 0.0);
  EXPECT_EQ(s.S3, 0.0);
}

TEST(SurfaceTerms, IllConditionedAndPreconditions) {
  EXPECT_THROW(surface_terms({1.005, 0}, kSpec, 50, kE, 1e-10), IllConditionedGeometryError);
  EXPECT_THROW(surface_terms({49.995, 0}, kSpec, 50, kE, 1e-10), IllConditionedGeometryError);
  EXPECT_THROW(surface_terms({0.5, 0}, kSpec, 50, kE, 1e-10), PreconditionError);
  EXPECT_THROW(surface_terms({3, 0}, sources::SolenoidSpec::finite(1, 1, 5), 50, kE, 1e-10), PreconditionError);
}
