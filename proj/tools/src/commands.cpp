#include "qcorr_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <yaml-cpp/exceptions.h>

#include <qcorr/errors.hpp>

namespace qcorr::cli {

namespace {

struct EngineRun {
  EngineKind engine;
  Trajectory trajectory;
};

std::vector<EngineRun> run_engines(const Config& c) {
  const Scenario sc = c.scenario();
  std::vector<EngineRun> runs;
  for (auto e : c.engines) runs.push_back({e, simulate(sc, e)});
  return runs;
}

void write_header(const Config& c, std::size_t n_max, std::string_view command, std::ostream& out) {
  out << "# qcorr " << kVersion << "\n";
  out << "# command: " << command << "\n";
  out << "# n_max: " << n_max << "\n";
  out << "# config:\n";
  std::istringstream yaml(serialize_config(c));
  for (std::string line; std::getline(yaml, line);) out << "#   " << line << "\n";
}

void write_columns(const std::vector<EngineKind>& engines, std::ostream& out) {
  for (auto e : engines) {
    const auto n = to_string(e);
    out << fmt::format(",C_{0},D_{0},I_{0},C_classical_{0},abs_c0_{0},gamma_{0}", n);
  }
}

void write_values(const CorrelationSample& s, std::ostream& out) {
  out << fmt::format(",{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", s.concurrence, s.discord, s.mutual_info,
                     s.classical_corr, s.abs_c0, s.gamma);
}

void warn_regime(const Config& c, std::ostream& err) {
  const auto mp = c.model.params();
  if (!mp.dispersive()) {
    err << "warning: |delta_j| < 5 |g|; the dispersive approximation is poor for these parameters\n";
  }
}

json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

Config sweep_point(const Config& base, SweepAxis axis, double v) {
  Config c = base;
  c.sweep.reset();
  switch (axis) {
    case SweepAxis::c3:
      c.state.c3 = v;
      if (base.sweep && base.sweep->c2_follows_c3) c.state.c2 = -v;
      break;
    case SweepAxis::alpha:
      c.alpha_re = v;
      break;
    case SweepAxis::delta:
      c.model.delta = v;
      break;
    case SweepAxis::g:
      c.model.g = v;
      break;
  }
  validate_config(c);
  return c;
}

}  // namespace

void write_simulation(const Config& c, std::ostream& out) {
  const auto runs = run_engines(c);
  write_header(c, runs.front().trajectory.n_max, "simulate", out);
  out << "t";
  write_columns(c.engines, out);
  out << "\n";
  const std::size_t n = runs.front().trajectory.samples.size();
  for (std::size_t k = 0; k < n; ++k) {
    out << fmt::format("{:.17g}", runs.front().trajectory.samples[k].t);
    for (const auto& r : runs) write_values(r.trajectory.samples[k], out);
    out << "\n";
  }
}

json to_json(const AnalysisReport& rep) {
  json j;
  auto intervals = [](const std::vector<Interval>& v) {
    json a = json::array();
    for (const auto& i : v) a.push_back({i.start, i.end});
    return a;
  };
  j["death_intervals_C"] = intervals(rep.death_intervals_C);
  j["death_intervals_D"] = intervals(rep.death_intervals_D);
  json plateaus = json::array();
  for (const auto& p : rep.plateaus_D) plateaus.push_back({{"start", p.start}, {"end", p.end}, {"level", p.level}});
  j["plateaus_D"] = plateaus;
  j["plateau_lifetime"] = rep.plateau_lifetime;
  j["period_theory"] = rep.period_theory;
  j["period_empirical"] = rep.period_empirical ? json(*rep.period_empirical) : json(nullptr);
  j["sync"] = {{"classification", std::string(to_string(rep.sync.classification))},
               {"pearson_r", rep.sync.pearson_r},
               {"degenerate", rep.sync.degenerate},
               {"samples_used", rep.sync.samples_used},
               {"threshold", rep.options.sync_threshold}};
  j["options"] = {{"death_eps", rep.options.death_eps},
                  {"plateau_window", rep.options.plateau.window},
                  {"plateau_slope_eps", rep.options.plateau.slope_eps},
                  {"plateau_level_eps", rep.options.plateau.level_eps}};
  return j;
}

json analyze_report(const Config& c) {
  const Scenario sc = c.scenario();
  const auto runs = run_engines(c);
  json j;
  j["version"] = kVersion;
  j["n_max"] = runs.front().trajectory.n_max;
  j["t_max"] = resolved_t_max(sc);
  j["samples"] = c.samples;
  json engines = json::object();
  for (const auto& r : runs) engines[std::string(to_string(r.engine))] = to_json(analyze(sc, r.trajectory, c.analysis));
  j["engines"] = engines;
  j["config"] = serialize_config(c);
  return j;
}

SweepOutcome write_sweep(const Config& c, std::ostream& out) {
  if (!c.sweep || c.sweep->values.empty()) throw ConfigError("sweep.values: must not be empty");
  const SweepAxis axis = c.sweep->axis;

  SweepOutcome outcome;
  std::ostringstream rows;
  std::size_t n_max = 0;
  for (double v : c.sweep->values) {
    json entry{{"axis", std::string(to_string(axis))}, {"value", v}};
    try {
      const Config point = sweep_point(c, axis, v);
      const Scenario sc = point.scenario();
      const auto runs = run_engines(point);
      n_max = std::max(n_max, runs.front().trajectory.n_max);
      json engines = json::object();
      for (const auto& r : runs) {
        engines[std::string(to_string(r.engine))] = to_json(analyze(sc, r.trajectory, point.analysis));
      }
      entry["n_max"] = runs.front().trajectory.n_max;
      entry["engines"] = engines;
      const std::size_t n = runs.front().trajectory.samples.size();
      for (std::size_t k = 0; k < n; ++k) {
        rows << fmt::format("{:.17g},{:.17g}", v, runs.front().trajectory.samples[k].t);
        for (const auto& r : runs) write_values(r.trajectory.samples[k], rows);
        rows << "\n";
      }
    } catch (const std::exception& e) {
      const int code = exit_code_for(e);
      entry["error"] = e.what();
      entry["exit_code"] = code;
      if (outcome.exit_code == 0) outcome.exit_code = code;
    }
    outcome.summary.push_back(entry);
  }

  write_header(c, n_max, "sweep", out);
  out << "axis_value,t";
  write_columns(c.engines, out);
  out << "\n" << rows.str();
  for (const auto& entry : outcome.summary) out << "# report " << entry.dump() << "\n";
  return outcome;
}

json device_report(const Config& c) {
  const DeviceSpec d = c.device.value_or(DeviceSpec{});
  const auto& geo = d.geometry;
  const auto& k = d.constants;

  const double current0 = current_amplitude(geo, k);
  const double g = coupling_g(geo, k);
  const double current = d.current.value_or(current0);
  const double omega1 = d.omega1 > 0.0 ? d.omega1 : geo.omega_r + 10.0 * g;
  const double omega2 = d.omega2 > 0.0 ? d.omega2 : geo.omega_r + 10.0 * g;
  const ModelParams mp = model_from_device(geo, omega1, omega2, k);
  const RegimeReport regime = regime_check(mp);
  const double dB = switch_field(geo, current, k);

  json j;
  j["version"] = kVersion;
  j["geometry"] = {{"r", geo.r},          {"L", geo.L},
                   {"l", geo.l},          {"omega_r", geo.omega_r},
                   {"delta_BN_z", geo.delta_BN_z}, {"dB_z", geo.dB_z}};
  j["constants"] = {{"hbar", k.hbar}, {"mu_B", k.mu_B}, {"mu_0", k.mu_0}, {"g_B", k.g_B}};
  j["current_amplitude"] = current0;
  j["current_sign"] = {current_sign(1), current_sign(2)};
  j["g"] = g;
  j["omega1"] = omega1;
  j["omega2"] = omega2;
  j["delta1"] = mp.delta1();
  j["delta2"] = mp.delta2();
  const double x = chi(mp.g, mp.delta1(), mp.delta2());
  j["chi"] = x;
  j["chi_over_g"] = x / g;
  j["regime"] = {{"dispersive_ratio", {number_or_inf(regime.dispersive_ratio[0]), number_or_inf(regime.dispersive_ratio[1])}},
                 {"rwa_ratio", {number_or_inf(regime.rwa_ratio[0]), number_or_inf(regime.rwa_ratio[1])}},
                 {"dispersive_pass", regime.dispersive_pass},
                 {"rwa_pass", regime.rwa_pass}};
  j["switch_current"] = current;
  j["switch_field"] = dB;
  j["field_gradient_with_switch"] = field_gradient(geo, current, dB, k);
  j["field_gradient_configured"] = field_gradient(geo, current, geo.dB_z, k);
  return j;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return 2;
  if (dynamic_cast<const YAML::Exception*>(&e)) return 2;
  if (dynamic_cast<const PhysicalityError*>(&e)) return 3;
  if (dynamic_cast<const NumericalError*>(&e)) return 4;
  return 1;
}

namespace {

struct Overrides {
  std::string config;
  std::string output;
  std::string engine;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string axis;
  std::vector<double> values;
  std::string summary;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "YAML scenario file")->check(CLI::ExistingFile);
  sub->add_option("-o,--output", o.output, "output file (default: stdout)");
  sub->add_option("--engine", o.engine, "closed | effective | jc | all");
  sub->add_option("--samples", o.samples, "number of time samples")->check(CLI::Range(16, 100000000));
  sub->add_option("--seed", o.seed, "seed for randomized tooling; the pipeline itself is deterministic");
}

Config resolve(const Overrides& o) {
  Config c = o.config.empty() ? parse_config("") : load_config(o.config);
  if (!o.engine.empty()) c.engines = parse_engines(o.engine);
  if (o.samples > 0) c.samples = o.samples;
  if (!o.output.empty()) c.output = o.output;
  if (!o.axis.empty() || !o.values.empty()) {
    SweepSpec sw = c.sweep.value_or(SweepSpec{});
    if (!o.axis.empty()) sw.axis = parse_axis(o.axis);
    if (!o.values.empty()) sw.values = o.values;
    c.sweep = sw;
  }
  validate_config(c);
  return c;
}

// Writes to the configured file when there is one, else to `out`.
template <typename F>
void emit(const Config& c, std::ostream& out, F&& body) {
  if (!c.output || c.output->empty() || *c.output == "-") {
    body(out);
    return;
  }
  std::ofstream file(*c.output);
  if (!file) throw ConfigError("output.path: cannot open '" + *c.output + "' for writing");
  body(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation dynamics of two qubits coupled through a resonator bus", "qcorr"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Overrides o;
  auto* simulate_cmd = app.add_subcommand("simulate", "write C, D, I, classical correlation, |c0|, gamma per sample");
  auto* analyze_cmd = app.add_subcommand("analyze", "simulate, then report death intervals, plateaus, periods, sync");
  auto* sweep_cmd = app.add_subcommand("sweep", "simulate and analyze over a list of parameter values");
  auto* device_cmd = app.add_subcommand("device", "coupling constants and switching field from device geometry");
  for (auto* sub : {simulate_cmd, analyze_cmd, sweep_cmd, device_cmd}) add_common(sub, o);
  sweep_cmd->add_option("--axis", o.axis, "c3 | alpha | delta | g");
  sweep_cmd->add_option("--values", o.values, "axis values")->delimiter(',');
  sweep_cmd->add_option("--summary", o.summary, "also write the per-value reports as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const Config c = resolve(o);
    warn_regime(c, err);
    if (simulate_cmd->parsed()) {
      emit(c, out, [&](std::ostream& s) { write_simulation(c, s); });
    } else if (analyze_cmd->parsed()) {
      const json j = analyze_report(c);
      emit(c, out, [&](std::ostream& s) { s << j.dump(2) << "\n"; });
    } else if (sweep_cmd->parsed()) {
      SweepOutcome outcome;
      emit(c, out, [&](std::ostream& s) { outcome = write_sweep(c, s); });
      if (!o.summary.empty()) {
        std::ofstream f(o.summary);
        if (!f) throw ConfigError("--summary: cannot open '" + o.summary + "' for writing");
        f << outcome.summary.dump(2) << "\n";
      }
      for (const auto& entry : outcome.summary) {
        if (entry.contains("error")) {
          err << "error: " << entry["axis"].get<std::string>() << "=" << entry["value"].dump() << ": "
              << entry["error"].get<std::string>() << "\n";
        }
      }
      return outcome.exit_code;
    } else if (device_cmd->parsed()) {
      const json j = device_report(c);
      emit(c, out, [&](std::ostream& s) { s << j.dump(2) << "\n"; });
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}

}  // namespace qcorr::cli
