#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "abkit/dynamics.hpp"
#include "abkit/errors.hpp"
#include "abkit/sources.hpp"

using namespace abkit;
using namespace abkit::dynamics;
using sources::SolenoidSpec;

namespace {

constexpr double kE = -1.0;
const auto kInf = SolenoidSpec::infinite(1, 1);

}  // namespace

TEST(Ramp, ProfileShapes) {
  for (auto shape : {RampProfile::Shape::Smoothstep, RampProfile::Shape::Linear}) {
    const RampProfile p{shape, 4.0, 2.0};
    EXPECT_EQ(p.B(-1), 0.0);
    EXPECT_EQ(p.B(0), 0.0);
    EXPECT_NEAR(p.B(2), 1.0, 1e-15);
    EXPECT_EQ(p.B(4), 2.0);
    EXPECT_EQ(p.B(9), 2.0);
    EXPECT_EQ(p.dBdt(5), 0.0);
    const double h = 1e-6;
    EXPECT_NEAR(p.dBdt(1.3), (p.B(1.3 + h) - p.B(1.3 - h)) / (2 * h), 1e-8);
  }
  EXPECT_EQ(parse_shape("linear"), RampProfile::Shape::Linear);
  EXPECT_EQ(to_string(RampProfile::Shape::Smoothstep), "smoothstep");
  EXPECT_THROW(parse_shape("cubic"), PreconditionError);
  EXPECT_THROW((RampProfile{RampProfile::Shape::Linear, 0.0, 1.0}.validate()), PreconditionError);
}

TEST(Ramp, MechanicalOamChangesByMinusBeta) {
  const auto res = ramp_scenario(3.0, kInf, RampProfile{}, kE);
  EXPECT_NEAR(res.beta, -0.5, 1e-15);
  EXPECT_NEAR(res.delta_L_mech, 0.5, 1e-8);
  EXPECT_NEAR(res.delta_L_pot, -0.5, 1e-8);
  EXPECT_NEAR(res.delta_L_gic, 0.0, 1e-8);
  EXPECT_LT(res.max_gic_drift, 1e-8);
  ASSERT_EQ(res.rows.size(), 101u);
  EXPECT_EQ(res.rows.front().s, 0.0);
  EXPECT_EQ(res.rows.back().s, 10.0);
  for (const auto& row : res.rows) EXPECT_EQ(row.B_z, 0.0);
}

TEST(Ramp, ShapeAndDurationIndependent) {
  const double ref = ramp_scenario(3.0, kInf, RampProfile{}, kE).delta_L_mech;
  for (auto shape : {RampProfile::Shape::Smoothstep, RampProfile::Shape::Linear}) {
    for (double tf : {1.0, 10.0, 100.0}) {
      const auto res = ramp_scenario(3.0, kInf, RampProfile{shape, tf, 1.0}, kE);
      EXPECT_NEAR(res.delta_L_mech, ref, 1e-8) << tf;
    }
  }
}

TEST(Ramp, LinearInFinalField) {
  EXPECT_NEAR(ramp_scenario(3.0, kInf, RampProfile{RampProfile::Shape::Smoothstep, 10, 0.5}, kE).delta_L_mech,
              0.25, 1e-8);
  const auto off = ramp_scenario(3.0, kInf, RampProfile{RampProfile::Shape::Linear, 10, 0.0}, kE, 1.25);
  EXPECT_EQ(off.delta_L_mech, 0.0);
  EXPECT_EQ(off.delta_L_pot, 0.0);
  EXPECT_EQ(off.rows.back().L_mech, 1.25);
}

TEST(Ramp, IndependentOfElectronRadius) {
  for (double r : {1.5, 3.0, 40.0}) {
    EXPECT_NEAR(ramp_scenario(r, kInf, RampProfile{}, kE).delta_L_mech, 0.5, 1e-8);
  }
  EXPECT_THROW(ramp_scenario(0.5, kInf, RampProfile{}, kE), PreconditionError);
  EXPECT_THROW(ramp_scenario(3.0, SolenoidSpec::finite(1, 1, 5), RampProfile{}, kE), PreconditionError);
}

TEST(Approach, ConservesCanonicalMomentum) {
  const auto res = approach_scenario(SolenoidSpec::finite(1, 1, 5), 0.0, 2.0, 500, 1.5, kE);
  EXPECT_LT(res.max_residual, 1e-3);
  ASSERT_EQ(res.rows.size(), 61u);
  EXPECT_EQ(res.rows.front().r, 500.0);
  EXPECT_EQ(res.rows.back().r, 1.5);
  for (const auto& row : res.rows) EXPECT_NEAR(row.L_gic, row.L_mech + row.L_pot, 1e-12);
}

TEST(Approach, StartValueApproachesM0) {
  const auto spec = SolenoidSpec::finite(1, 1, 5);
  const auto res = approach_scenario(spec, 0.0, 2.0, 5000, 1.5, kE);
  EXPECT_NEAR(res.L_mech_start, 2.0, 1e-3);
  // The offset m0 - L_mech_start is e r A_phi, to leading order e L / (2 r).
  const double far = approach_scenario(spec, 0.0, 2.0, 500, 1.5, kE).L_mech_start - 2.0;
  EXPECT_NEAR(far, -kE * 500 * sources::far_field_A_phi(500, spec), 0.05 * std::abs(far));
}

TEST(Approach, ZeroFieldKeepsM0) {
  const auto res = approach_scenario(SolenoidSpec::finite(1, 0, 5), 0.0, 2.0, 500, 1.5, kE);
  for (const auto& row : res.rows) EXPECT_EQ(row.L_mech, 2.0);
}

TEST(Approach, OffPlaneAndInside) {
  const auto res = approach_scenario(SolenoidSpec::finite(1, 1, 2), 3.0, 1.0, 300, 0.2, kE);
  EXPECT_LT(res.max_residual, 1e-3);
}

TEST(Approach, SheetCrossingRejected) {
  EXPECT_THROW(approach_scenario(SolenoidSpec::finite(1, 1, 5), 0.0, 2.0, 500, 0.5, kE), NearSingularError);
  EXPECT_THROW(approach_scenario(SolenoidSpec::finite(1, 1, 5), 0.0, 2.0, 1.0, 1.5, kE), PreconditionError);
  EXPECT_THROW(approach_scenario(kInf, 0.0, 2.0, 500, 1.5, kE), PreconditionError);
}

TEST(Sweep, LimitOrdering) {
  const std::array<double, 3> Ls{5, 20, 80};
  const auto res = infinite_length_sweep(1, 1, 0, 1, kE, Ls, 2.0);
  EXPECT_NEAR(res.beta, -0.5, 1e-15);
  ASSERT_EQ(res.rows.size(), 3u);
  EXPECT_TRUE(res.monotone);
  const auto& last = res.rows.back();
  EXPECT_LT(std::abs(last.L_pot - res.beta), 0.02 * 0.5);
  EXPECT_LT(std::abs(last.L_mech - 1.5), 0.02 * 1.5);
  EXPECT_LT(res.rows[2].return_flux, res.rows[1].return_flux);
  EXPECT_LT(res.rows[1].return_flux, res.rows[0].return_flux);
  for (const auto& row : res.rows) {
    EXPECT_LT(row.max_residual, 1e-3);
    EXPECT_LT(row.B_z_probe, 0.0);
  }
}

TEST(Sweep, ZeroField) {
  const std::array<double, 2> Ls{5, 20};
  const auto res = infinite_length_sweep(1, 0, 0, 1, kE, Ls, 2.0);
  for (const auto& row : res.rows) {
    EXPECT_EQ(row.L_pot, 0.0);
    EXPECT_EQ(row.L_mech, 1.0);
  }
}
