#include "qcorr/device.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

void validate_geometry(const DeviceGeometry& geo) {
  auto positive = [](const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidGeometryError(std::string(name) + " must be finite and positive, got " + std::to_string(v));
    }
  };
  positive("r", geo.r);
  positive("L", geo.L);
  positive("l", geo.l);
  positive("omega_r", geo.omega_r);
  if (!std::isfinite(geo.delta_BN_z) || !std::isfinite(geo.dB_z)) {
    throw InvalidGeometryError("field values must be finite");
  }
}

double current_amplitude(const DeviceGeometry& geo, const PhysicalConstants& k) {
  validate_geometry(geo);
  return std::sqrt(k.hbar * geo.omega_r / (geo.L * geo.l));
}

int current_sign(int j) {
  if (j != 1 && j != 2) throw DomainError("dot index must be 1 or 2");
  return j == 1 ? 1 : -1;
}

double coupling_g(const DeviceGeometry& geo, const PhysicalConstants& k) {
  const double prefactor = k.g_B * k.mu_B * k.mu_0 / (8.0 * k.hbar * std::numbers::pi * geo.r);
  return prefactor * current_amplitude(geo, k);
}

namespace {

double wire_field(const DeviceGeometry& geo, double current, const PhysicalConstants& k) {
  return geo.delta_BN_z + k.mu_0 * current / (4.0 * std::numbers::pi * geo.r);
}

}  // namespace

double switch_field(const DeviceGeometry& geo, double current, const PhysicalConstants& k) {
  validate_geometry(geo);
  return -wire_field(geo, current, k);
}

double field_gradient(const DeviceGeometry& geo, double current, double dB_z, const PhysicalConstants& k) {
  validate_geometry(geo);
  return wire_field(geo, current, k) + dB_z;
}

RegimeReport regime_check(const ModelParams& mp, double dispersive_min, double rwa_min) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  RegimeReport rep;
  const std::array<double, 2> omega{mp.omega1, mp.omega2};
  const std::array<double, 2> delta{mp.delta1(), mp.delta2()};
  rep.dispersive_pass = true;
  rep.rwa_pass = true;
  for (int j = 0; j < 2; ++j) {
    const double ad = std::abs(delta[j]);
    rep.dispersive_ratio[j] = mp.g == 0.0 ? inf : ad / std::abs(mp.g);
    rep.rwa_ratio[j] = ad == 0.0 ? inf : (omega[j] + mp.omega_r) / ad;
    rep.dispersive_pass = rep.dispersive_pass && rep.dispersive_ratio[j] >= dispersive_min;
    rep.rwa_pass = rep.rwa_pass && rep.rwa_ratio[j] >= rwa_min;
  }
  return rep;
}

ModelParams model_from_device(const DeviceGeometry& geo, double omega1, double omega2,
                              const PhysicalConstants& k) {
  ModelParams mp;
  mp.g = coupling_g(geo, k);
  mp.omega_r = geo.omega_r;
  mp.omega1 = omega1;
  mp.omega2 = omega2;
  return mp;
}

}  // namespace qcorr
