#include "qcorr/simulation.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

std::string_view to_string(EngineKind e) {
  switch (e) {
    case EngineKind::closed:
      return "closed";
    case EngineKind::effective:
      return "effective";
    case EngineKind::jaynes_cummings:
      break;
  }
  return "jc";
}

double default_t_max(const ModelParams& mp) { return 2.0 * period_theory(mp.g, mp.delta1()); }

double resolved_t_max(const Scenario& sc) { return sc.t_max ? *sc.t_max : default_t_max(sc.model); }

std::vector<double> time_grid(double t_max, int samples) {
  if (samples < 2) throw DomainError("need at least 2 samples, got " + std::to_string(samples));
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive and finite");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = t_max * k / samples;
  return t;
}

CoherentState resolved_coherent_state(const Scenario& sc) {
  const CoherentState base = coherent_amplitudes(sc.alpha);
  if (!sc.n_max) return base.padded(kGuardLevels);
  if (*sc.n_max < base.n_max()) {
    throw TruncationError("n_max " + std::to_string(*sc.n_max) + " leaves a coherent tail above 1e-12; need at least " +
                          std::to_string(base.n_max()));
  }
  return base.padded(*sc.n_max - base.n_max());
}

Trajectory simulate(const Scenario& sc, EngineKind engine) {
  const auto times = time_grid(resolved_t_max(sc), sc.samples);
  const DensityMatrix4 rho0 = make_x_state(sc.state);
  const CoherentState cs = resolved_coherent_state(sc);

  Trajectory tr;
  tr.engine = engine;
  tr.n_max = cs.n_max();
  tr.samples.reserve(times.size());
  tr.states.reserve(times.size());

  auto record = [&](const DensityMatrix4& rho, double t) {
    tr.samples.push_back(evaluate_correlations(rho, t, sc.evaluate));
    tr.states.push_back(rho);
  };

  if (engine == EngineKind::closed) {
    for (double t : times) record(evolve_x_closed(sc.state, sc.alpha, sc.model, t), t);
    return tr;
  }

  const FockEngine fe = engine == EngineKind::effective ? FockEngine::effective : FockEngine::jaynes_cummings;
  const FockEvolution evo(rho0, cs, build_hamiltonian(fe, sc.model, cs.fock_dim()));
  for (double t : times) record(evo.state_at(t), t);
  return tr;
}

TimeSeries series(const Trajectory& tr, double CorrelationSample::*field) {
  std::vector<double> t, v;
  t.reserve(tr.samples.size());
  v.reserve(tr.samples.size());
  for (const auto& s : tr.samples) {
    t.push_back(s.t);
    v.push_back(s.*field);
  }
  return TimeSeries(std::move(t), std::move(v));
}

AnalysisReport analyze(const Scenario& sc, const Trajectory& tr, const AnalysisOptions& opts) {
  const TimeSeries c = series(tr, &CorrelationSample::concurrence);
  const TimeSeries d = series(tr, &CorrelationSample::discord);

  AnalysisReport rep;
  rep.options = opts;
  rep.death_intervals_C = detect_death_intervals(c, opts.death_eps);
  rep.death_intervals_D = detect_death_intervals(d, opts.death_eps);
  rep.plateaus_D = detect_plateaus(d, opts.plateau);
  rep.period_theory = period_theory(sc.model.g, sc.model.delta1());
  try {
    rep.period_empirical = period_empirical(series(tr, &CorrelationSample::abs_c0));
  } catch (const NoPeriodError&) {
    rep.period_empirical.reset();
  }
  rep.sync = sync_classify(c, d, rep.period_theory, opts.sync_threshold);
  rep.plateau_lifetime = plateau_lifetime(rep.plateaus_D, rep.death_intervals_C);
  return rep;
}

}  // namespace qcorr
