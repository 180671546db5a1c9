#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include <qcorr/device.hpp>
#include <qcorr/errors.hpp>

using namespace qcorr;
using std::numbers::pi;

TEST(Device, ReferenceValues) {
  const DeviceGeometry geo;
  EXPECT_NEAR(current_amplitude(geo), 3.1526346472292216e-08, 1e-21);
  EXPECT_NEAR(coupling_g(geo), 2772.4584552896117, 1e-9);
}

TEST(Device, DirectFormula) {
  const DeviceGeometry geo;
  const PhysicalConstants k;
  const double i0 = std::sqrt(1.054571817e-34 * 2 * pi * 6e9 / (0.01 * 4e-7));
  const double g = 2.0 * 9.2740100783e-24 * 1.25663706212e-6 / (8.0 * 1.054571817e-34 * pi * 1e-7) * i0;
  EXPECT_NEAR(current_amplitude(geo, k), i0, 1e-12 * i0);
  EXPECT_NEAR(coupling_g(geo, k), g, 1e-12 * g);
}

TEST(Device, ScalingLaws) {
  const DeviceGeometry base;
  const double g0 = coupling_g(base);
  DeviceGeometry geo = base;
  geo.r *= 2.0;
  EXPECT_NEAR(coupling_g(geo), g0 / 2.0, 1e-12 * g0);
  geo = base;
  geo.omega_r *= 4.0;
  EXPECT_NEAR(coupling_g(geo), 2.0 * g0, 1e-12 * g0);
  geo = base;
  geo.L *= 4.0;
  EXPECT_NEAR(coupling_g(geo), g0 / 2.0, 1e-12 * g0);
  geo = base;
  geo.l *= 9.0;
  EXPECT_NEAR(coupling_g(geo), g0 / 3.0, 1e-12 * g0);
}

TEST(Device, CurrentSign) {
  EXPECT_EQ(current_sign(1), 1);
  EXPECT_EQ(current_sign(2), -1);
  EXPECT_THROW(current_sign(0), DomainError);
  EXPECT_THROW(current_sign(3), DomainError);
}

TEST(Device, SwitchCancelsGradient) {
  DeviceGeometry geo;
  for (double bn : {0.0, 1e-3, -2e-4}) {
    geo.delta_BN_z = bn;
    for (double current : {0.0, 1e-8, 3.2e-8, -5e-7}) {
      const double dbz = switch_field(geo, current);
      EXPECT_EQ(field_gradient(geo, current, dbz), 0.0);
    }
  }
}

TEST(Device, SwitchFieldValue) {
  DeviceGeometry geo;
  // mu_0 I / (4 pi r) with I = 1e-6 A, r = 1e-7 m
  EXPECT_NEAR(switch_field(geo, 1e-6), -1.25663706212e-6 * 1e-6 / (4.0 * pi * 1e-7), 1e-20);
  geo.delta_BN_z = 1e-3;
  EXPECT_NEAR(switch_field(geo, 0.0), -1e-3, 1e-18);
}

TEST(Device, InvalidGeometry) {
  DeviceGeometry geo;
  geo.r = 0.0;
  EXPECT_THROW(validate_geometry(geo), InvalidGeometryError);
  EXPECT_THROW(coupling_g(geo), InvalidGeometryError);
  geo = {};
  geo.L = -1.0;
  EXPECT_THROW(current_amplitude(geo), InvalidGeometryError);
  geo = {};
  geo.omega_r = std::numeric_limits<double>::infinity();
  EXPECT_THROW(validate_geometry(geo), InvalidGeometryError);
  geo = {};
  geo.dB_z = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(switch_field(geo, 0.0), InvalidGeometryError);
}

TEST(Regime, DefaultModelPasses) {
  const auto rep = regime_check(ModelParams::identical(1.0, 10.0, 100.0));
  EXPECT_TRUE(rep.dispersive_pass);
  EXPECT_TRUE(rep.rwa_pass);
  EXPECT_NEAR(rep.dispersive_ratio[0], 10.0, 1e-12);
  EXPECT_NEAR(rep.rwa_ratio[0], (100.0 + 90.0) / 10.0, 1e-12);
}

TEST(Regime, Failures) {
  EXPECT_FALSE(regime_check(ModelParams::identical(1.0, 2.0, 100.0)).dispersive_pass);
  EXPECT_FALSE(regime_check(ModelParams::identical(1.0, 50.0, 100.0)).rwa_pass);
}

TEST(Regime, ZeroCouplingIsInfinitelyDispersive) {
  const auto rep = regime_check(ModelParams::identical(0.0, 10.0, 100.0));
  EXPECT_TRUE(std::isinf(rep.dispersive_ratio[0]));
  EXPECT_TRUE(rep.dispersive_pass);
}

TEST(Device, ModelFromDevice) {
  const DeviceGeometry geo;
  const double g = coupling_g(geo);
  const auto mp = model_from_device(geo, geo.omega_r + 10.0 * g, geo.omega_r + 10.0 * g);
  EXPECT_EQ(mp.g, g);
  EXPECT_EQ(mp.omega_r, geo.omega_r);
  EXPECT_NEAR(mp.delta1(), 10.0 * g, 1e-6 * g);
  EXPECT_TRUE(mp.identical_qubits());
}
