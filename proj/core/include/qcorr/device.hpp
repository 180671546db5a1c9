#pragma once

#include <array>
#include <numbers>

#include "qcorr/dynamics.hpp"

namespace qcorr {

/// CODATA 2018 values in SI units; g_B is the electron g-factor used for the coupling.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;   // J s
  double mu_B = 9.2740100783e-24;  // J/T
  double mu_0 = 1.25663706212e-6;  // N/A^2
  double g_B = 2.0;

  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

/// Resonator and dot geometry in SI units.
struct DeviceGeometry {
  double r = 1e-7;                          // dot to resonator distance, m
  double L = 0.01;                          // resonator length, m
  double l = 4e-7;                          // inductance per unit length, H/m
  double omega_r = 2.0 * std::numbers::pi * 6e9;  // rad/s
  double delta_BN_z = 0.0;                  // nuclear-field gradient, T
  double dB_z = 0.0;                        // applied field difference, T

  friend bool operator==(const DeviceGeometry&, const DeviceGeometry&) = default;
};

/// Throws InvalidGeometryError unless r, L, l, omega_r are finite and positive
/// and the field terms are finite.
void validate_geometry(const DeviceGeometry& geo);

/// Zero-point current scale sqrt(hbar omega_r / (L l)), in A.
double current_amplitude(const DeviceGeometry& geo, const PhysicalConstants& k = {});

/// Sign (-1)^{j-1} of the current seen by dot j (1 or 2).
int current_sign(int j);

/// g = g_B mu_B mu_0 / (8 hbar pi r) * sqrt(hbar omega_r / (L l)), in rad/s.
double coupling_g(const DeviceGeometry& geo, const PhysicalConstants& k = {});

/// Applied difference dB_z = -(delta_BN_z + mu_0 I / (4 pi r)) that cancels the
/// field gradient across a dot carrying current I; with it the coupling is off.
double switch_field(const DeviceGeometry& geo, double current, const PhysicalConstants& k = {});

/// delta_BN_z + mu_0 I / (4 pi r) + dB_z.
double field_gradient(const DeviceGeometry& geo, double current, double dB_z,
                      const PhysicalConstants& k = {});

struct RegimeReport {
  std::array<double, 2> dispersive_ratio{};  // |delta_j| / |g|, infinite for g = 0
  std::array<double, 2> rwa_ratio{};         // (omega_j + omega_r) / |delta_j|
  bool dispersive_pass = false;
  bool rwa_pass = false;
};

RegimeReport regime_check(const ModelParams& mp, double dispersive_min = 5.0, double rwa_min = 10.0);

/// Model in SI units: coupling from the geometry, resonator frequency from the
/// geometry, qubit splittings as given.
ModelParams model_from_device(const DeviceGeometry& geo, double omega1, double omega2,
                              const PhysicalConstants& k = {});

}  // namespace qcorr
