#include "qcorr_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <qcorr/errors.hpp>

namespace qcorr::cli {

ModelParams ModelSpec::params() const {
  ModelParams mp = ModelParams::identical(g, delta, omega);
  if (delta2) mp.omega2 = mp.omega_r + *delta2;
  return mp;
}

Scenario Config::scenario() const {
  Scenario sc;
  sc.state = state;
  sc.alpha = cplx(alpha_re, alpha_im);
  sc.model = model.params();
  sc.t_max = t_max;
  sc.samples = samples;
  sc.n_max = n_max;
  sc.evaluate.bruteforce_grid = bruteforce_grid;
  return sc;
}

std::vector<EngineKind> parse_engines(const std::string& name) {
  if (name == "closed") return {EngineKind::closed};
  if (name == "effective") return {EngineKind::effective};
  if (name == "jc") return {EngineKind::jaynes_cummings};
  if (name == "all") return {EngineKind::closed, EngineKind::effective, EngineKind::jaynes_cummings};
  throw ConfigError("engine: expected closed, effective, jc or all, got '" + name + "'");
}

std::string engines_name(const std::vector<EngineKind>& engines) {
  if (engines.size() == 3) return "all";
  return std::string(to_string(engines.at(0)));
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "c3") return SweepAxis::c3;
  if (name == "alpha") return SweepAxis::alpha;
  if (name == "delta") return SweepAxis::delta;
  if (name == "g") return SweepAxis::g;
  throw ConfigError("sweep.axis: expected c3, alpha, delta or g, got '" + name + "'");
}

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::c3:
      return "c3";
    case SweepAxis::alpha:
      return "alpha";
    case SweepAxis::delta:
      return "delta";
    case SweepAxis::g:
      break;
  }
  return "g";
}

namespace {

class Section {
 public:
  Section(const YAML::Node& node, std::string path, std::set<std::string> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_ + ": expected a mapping");
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) throw ConfigError(field(key) + ": unknown key");
    }
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return as_real(node_[key], field(key));
  }

  static double as_real(const YAML::Node& n, const std::string& name) {
    double v = 0.0;
    try {
      v = n.as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError(name + ": expected a number");
    }
    if (!std::isfinite(v)) throw ConfigError(name + ": must be finite");
    return v;
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    try {
      return node_[key].as<long long>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key) + ": expected an integer");
    }
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    try {
      return node_[key].as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key) + ": expected true or false");
    }
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!node_[key].IsScalar()) throw ConfigError(field(key) + ": expected a string");
    return node_[key].as<std::string>();
  }

  bool is_auto(const std::string& key) const {
    return !has(key) || (node_[key].IsScalar() && node_[key].as<std::string>() == "auto");
  }

  YAML::Node node(const std::string& key) const { return node_[key]; }

 private:
  YAML::Node node_;
  std::string path_;
};

void parse_device(const Section& s, DeviceSpec& d) {
  d.geometry.r = s.real("r", d.geometry.r);
  d.geometry.L = s.real("L", d.geometry.L);
  d.geometry.l = s.real("l", d.geometry.l);
  d.geometry.omega_r = s.real("omega_r", d.geometry.omega_r);
  d.geometry.delta_BN_z = s.real("delta_BN_z", d.geometry.delta_BN_z);
  d.geometry.dB_z = s.real("dB_z", d.geometry.dB_z);
  d.constants.g_B = s.real("g_B", d.constants.g_B);
  d.constants.hbar = s.real("hbar", d.constants.hbar);
  d.constants.mu_B = s.real("mu_B", d.constants.mu_B);
  d.constants.mu_0 = s.real("mu_0", d.constants.mu_0);
  if (s.has("current")) d.current = s.real("current", 0.0);
  d.omega1 = s.real("omega1", d.omega1);
  d.omega2 = s.real("omega2", d.omega2);
}

// Shortest text that reads back to the same double.
std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

Config parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: YAML syntax error: ") + e.what());
  }
  Config c;
  if (root.IsNull()) {
    validate_config(c);
    return c;
  }
  const Section top(root, "",
                    {"state", "resonator", "model", "time", "engine", "analysis", "sweep", "device", "output"});

  if (top.has("state")) {
    const Section s(top.node("state"), "state", {"c1", "c2", "c3"});
    c.state.c1 = s.real("c1", c.state.c1);
    c.state.c2 = s.real("c2", c.state.c2);
    c.state.c3 = s.real("c3", c.state.c3);
  }
  if (top.has("resonator")) {
    const Section s(top.node("resonator"), "resonator", {"alpha", "alpha_im", "n_max"});
    c.alpha_re = s.real("alpha", c.alpha_re);
    c.alpha_im = s.real("alpha_im", c.alpha_im);
    if (!s.is_auto("n_max")) {
      const long long n = s.integer("n_max", 0);
      if (n < 0) throw ConfigError("resonator.n_max: must be nonnegative or auto");
      c.n_max = static_cast<std::size_t>(n);
    }
  }
  if (top.has("model")) {
    const Section s(top.node("model"), "model", {"g", "delta", "omega", "delta2"});
    c.model.g = s.real("g", c.model.g);
    c.model.delta = s.real("delta", c.model.delta);
    c.model.omega = s.real("omega", c.model.omega);
    if (s.has("delta2")) c.model.delta2 = s.real("delta2", 0.0);
  }
  if (top.has("time")) {
    const Section s(top.node("time"), "time", {"t_max", "samples"});
    if (!s.is_auto("t_max")) c.t_max = s.real("t_max", 0.0);
    const long long n = s.integer("samples", c.samples);
    if (n < 16 || n > 100000000) throw ConfigError("time.samples: must be between 16 and 1e8");
    c.samples = static_cast<int>(n);
  }
  if (top.has("engine")) c.engines = parse_engines(top.text("engine", "closed"));
  if (top.has("analysis")) {
    const Section s(top.node("analysis"), "analysis",
                    {"death_eps", "plateau_window", "plateau_slope_eps", "plateau_level_eps", "sync_threshold",
                     "bruteforce_grid"});
    c.analysis.death_eps = s.real("death_eps", c.analysis.death_eps);
    c.analysis.plateau.window = static_cast<int>(s.integer("plateau_window", c.analysis.plateau.window));
    c.analysis.plateau.slope_eps = s.real("plateau_slope_eps", c.analysis.plateau.slope_eps);
    c.analysis.plateau.level_eps = s.real("plateau_level_eps", c.analysis.plateau.level_eps);
    c.analysis.sync_threshold = s.real("sync_threshold", c.analysis.sync_threshold);
    c.bruteforce_grid = static_cast<int>(s.integer("bruteforce_grid", c.bruteforce_grid));
  }
  if (top.has("sweep")) {
    const Section s(top.node("sweep"), "sweep", {"axis", "values", "c2_follows_c3"});
    SweepSpec sw;
    sw.axis = parse_axis(s.text("axis", "c3"));
    if (s.has("values")) {
      const auto& vals = s.node("values");
      if (!vals.IsSequence()) throw ConfigError("sweep.values: expected a list of numbers");
      for (std::size_t i = 0; i < vals.size(); ++i) {
        sw.values.push_back(Section::as_real(vals[i], "sweep.values[" + std::to_string(i) + "]"));
      }
    }
    sw.c2_follows_c3 = s.boolean("c2_follows_c3", sw.c2_follows_c3);
    c.sweep = sw;
  }
  if (top.has("device")) {
    const Section s(top.node("device"), "device",
                    {"r", "L", "l", "omega_r", "delta_BN_z", "dB_z", "g_B", "hbar", "mu_B", "mu_0", "current",
                     "omega1", "omega2"});
    DeviceSpec d;
    parse_device(s, d);
    c.device = d;
  }
  if (top.has("output")) {
    const Section s(top.node("output"), "output", {"path"});
    if (s.has("path")) c.output = s.text("path", "");
  }
  validate_config(c);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const Config& c) {
  const auto& s = c.state;
  for (auto [name, v] : {std::pair{"state.c1", s.c1}, std::pair{"state.c2", s.c2}, std::pair{"state.c3", s.c3}}) {
    if (std::abs(v) > 1.0) throw PhysicalityError(std::string(name) + ": |c| must not exceed 1");
  }
  if (!s.physical()) throw PhysicalityError("state: coefficients give a negative eigenvalue");
  if (c.samples < 16) throw ConfigError("time.samples: must be at least 16");
  if (c.t_max && !(*c.t_max > 0.0)) throw ConfigError("time.t_max: must be positive");
  if (!c.t_max && c.model.g == 0.0) throw ConfigError("time.t_max: auto needs a nonzero model.g");
  if (c.model.delta == 0.0) throw ConfigError("model.delta: must be nonzero");
  if (c.model.delta2 && *c.model.delta2 == 0.0) throw ConfigError("model.delta2: must be nonzero");
  if (c.n_max && *c.n_max > kDefaultFockCap) {
    throw ConfigError("resonator.n_max: exceeds the cap of " + std::to_string(kDefaultFockCap));
  }
  const bool identical = !c.model.delta2 || *c.model.delta2 == c.model.delta;
  for (auto e : c.engines) {
    if (e == EngineKind::closed && !identical) {
      throw ConfigError("engine: closed requires identical qubits (drop model.delta2 or set it to model.delta)");
    }
  }
  if (!(c.analysis.death_eps > 0.0)) throw ConfigError("analysis.death_eps: must be positive");
  if (c.analysis.plateau.window < 3) throw ConfigError("analysis.plateau_window: must be at least 3");
  if (c.analysis.plateau.slope_eps < 0.0) throw ConfigError("analysis.plateau_slope_eps: must be nonnegative");
  if (c.analysis.plateau.level_eps < 0.0) throw ConfigError("analysis.plateau_level_eps: must be nonnegative");
  if (!(c.analysis.sync_threshold > 0.0 && c.analysis.sync_threshold <= 1.0)) {
    throw ConfigError("analysis.sync_threshold: must lie in (0, 1]");
  }
  if (c.bruteforce_grid < 8) throw ConfigError("analysis.bruteforce_grid: must be at least 8");
  if (c.sweep && c.sweep->values.empty()) throw ConfigError("sweep.values: must not be empty");
  if (c.device) {
    try {
      validate_geometry(c.device->geometry);
    } catch (const InvalidGeometryError& e) {
      throw InvalidGeometryError(std::string("device: ") + e.what());
    }
  }
}

std::string serialize_config(const Config& c) {
  YAML::Emitter y;
  y << YAML::BeginMap;

  y << YAML::Key << "state" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "c1" << YAML::Value << num(c.state.c1);
  y << YAML::Key << "c2" << YAML::Value << num(c.state.c2);
  y << YAML::Key << "c3" << YAML::Value << num(c.state.c3);
  y << YAML::EndMap;

  y << YAML::Key << "resonator" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "alpha" << YAML::Value << num(c.alpha_re);
  y << YAML::Key << "alpha_im" << YAML::Value << num(c.alpha_im);
  y << YAML::Key << "n_max" << YAML::Value;
  if (c.n_max) {
    y << static_cast<unsigned long long>(*c.n_max);
  } else {
    y << "auto";
  }
  y << YAML::EndMap;

  y << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "g" << YAML::Value << num(c.model.g);
  y << YAML::Key << "delta" << YAML::Value << num(c.model.delta);
  y << YAML::Key << "omega" << YAML::Value << num(c.model.omega);
  if (c.model.delta2) y << YAML::Key << "delta2" << YAML::Value << num(*c.model.delta2);
  y << YAML::EndMap;

  y << YAML::Key << "time" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "t_max" << YAML::Value;
  if (c.t_max) {
    y << num(*c.t_max);
  } else {
    y << "auto";
  }
  y << YAML::Key << "samples" << YAML::Value << c.samples;
  y << YAML::EndMap;

  y << YAML::Key << "engine" << YAML::Value << engines_name(c.engines);

  y << YAML::Key << "analysis" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "death_eps" << YAML::Value << num(c.analysis.death_eps);
  y << YAML::Key << "plateau_window" << YAML::Value << c.analysis.plateau.window;
  y << YAML::Key << "plateau_slope_eps" << YAML::Value << num(c.analysis.plateau.slope_eps);
  y << YAML::Key << "plateau_level_eps" << YAML::Value << num(c.analysis.plateau.level_eps);
  y << YAML::Key << "sync_threshold" << YAML::Value << num(c.analysis.sync_threshold);
  y << YAML::Key << "bruteforce_grid" << YAML::Value << c.bruteforce_grid;
  y << YAML::EndMap;

  if (c.sweep) {
    y << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "axis" << YAML::Value << std::string(to_string(c.sweep->axis));
    y << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double v : c.sweep->values) y << num(v);
    y << YAML::EndSeq;
    y << YAML::Key << "c2_follows_c3" << YAML::Value << c.sweep->c2_follows_c3;
    y << YAML::EndMap;
  }

  if (c.device) {
    const auto& d = *c.device;
    y << YAML::Key << "device" << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "r" << YAML::Value << num(d.geometry.r);
    y << YAML::Key << "L" << YAML::Value << num(d.geometry.L);
    y << YAML::Key << "l" << YAML::Value << num(d.geometry.l);
    y << YAML::Key << "omega_r" << YAML::Value << num(d.geometry.omega_r);
    y << YAML::Key << "delta_BN_z" << YAML::Value << num(d.geometry.delta_BN_z);
    y << YAML::Key << "dB_z" << YAML::Value << num(d.geometry.dB_z);
    y << YAML::Key << "g_B" << YAML::Value << num(d.constants.g_B);
    y << YAML::Key << "hbar" << YAML::Value << num(d.constants.hbar);
    y << YAML::Key << "mu_B" << YAML::Value << num(d.constants.mu_B);
    y << YAML::Key << "mu_0" << YAML::Value << num(d.constants.mu_0);
    if (d.current) y << YAML::Key << "current" << YAML::Value << num(*d.current);
    y << YAML::Key << "omega1" << YAML::Value << num(d.omega1);
    y << YAML::Key << "omega2" << YAML::Value << num(d.omega2);
    y << YAML::EndMap;
  }

  if (c.output) {
    y << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "path" << YAML::Value << *c.output;
    y << YAML::EndMap;
  }

  y << YAML::EndMap;
  return std::string(y.c_str()) + "\n";
}

}  // namespace qcorr::cli
