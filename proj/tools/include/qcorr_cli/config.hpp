#pragma once

#include <optional>
#include <string>
#include <vector>

#include <qcorr/analysis.hpp>
#include <qcorr/device.hpp>
#include <qcorr/simulation.hpp>

namespace qcorr::cli {

/// Model as written in a config: identical qubits unless delta2 is given.
struct ModelSpec {
  double g = 1.0;
  double delta = 10.0;
  double omega = 100.0;
  std::optional<double> delta2;

  ModelParams params() const;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

enum class SweepAxis { c3, alpha, delta, g };

struct SweepSpec {
  SweepAxis axis = SweepAxis::c3;
  std::vector<double> values;
  bool c2_follows_c3 = true;  // keep c2 = -c3 on a c3 sweep
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct DeviceSpec {
  DeviceGeometry geometry;
  PhysicalConstants constants;
  std::optional<double> current;  // default: the zero-point amplitude
  double omega1 = 0.0;            // rad/s, 0 means omega_r + 10 g
  double omega2 = 0.0;
  friend bool operator==(const DeviceSpec&, const DeviceSpec&) = default;
};

struct Config {
  XStateParams state{1.0, -0.3, 0.3};
  double alpha_re = 2.0;
  double alpha_im = 0.0;
  std::optional<std::size_t> n_max;
  ModelSpec model;
  std::optional<double> t_max;
  int samples = 4096;
  std::vector<EngineKind> engines{EngineKind::closed};
  AnalysisOptions analysis;
  int bruteforce_grid = 16;
  std::optional<SweepSpec> sweep;
  std::optional<DeviceSpec> device;
  std::optional<std::string> output;

  Scenario scenario() const;
  friend bool operator==(const Config&, const Config&) = default;
};

/// Parses YAML text. Unknown keys, wrong types and out-of-range values raise
/// ConfigError naming the offending field; an unphysical state raises PhysicalityError.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// Canonical YAML for a config; parse_config(serialize_config(c)) == c.
std::string serialize_config(const Config& c);

/// Field checks shared by parsing and command-line overrides.
void validate_config(const Config& c);

std::vector<EngineKind> parse_engines(const std::string& name);
std::string engines_name(const std::vector<EngineKind>& engines);
SweepAxis parse_axis(const std::string& name);
std::string_view to_string(SweepAxis a);

}  // namespace qcorr::cli
