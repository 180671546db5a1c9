#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qcorr/analysis.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

enum class EngineKind { closed, effective, jaynes_cummings };

std::string_view to_string(EngineKind e);

inline constexpr std::size_t kGuardLevels = 20;

/// One run: initial X state, resonator amplitude, model and time grid.
struct Scenario {
  XStateParams state{1.0, -0.3, 0.3};
  cplx alpha{2.0, 0.0};
  ModelParams model = ModelParams::identical(1.0, 10.0, 100.0);
  std::optional<double> t_max;        // default: two periods
  int samples = 4096;
  std::optional<std::size_t> n_max;   // default: coherent tail bound plus guard levels
  EvaluateOptions evaluate;
};

/// Two revival periods of the first qubit's detuning.
double default_t_max(const ModelParams& mp);
double resolved_t_max(const Scenario& sc);

/// t_k = k t_max / samples for k = 0..samples-1. Throws DomainError for
/// samples < 2 or t_max <= 0.
std::vector<double> time_grid(double t_max, int samples);

/// Truncated coherent state for the scenario. An explicit n_max below the tail
/// bound raises TruncationError.
CoherentState resolved_coherent_state(const Scenario& sc);

struct Trajectory {
  EngineKind engine = EngineKind::closed;
  std::size_t n_max = 0;
  std::vector<CorrelationSample> samples;
  std::vector<DensityMatrix4> states;
};

Trajectory simulate(const Scenario& sc, EngineKind engine);

/// Column of a trajectory as a time series, e.g. series(tr, &CorrelationSample::discord).
TimeSeries series(const Trajectory& tr, double CorrelationSample::*field);

AnalysisReport analyze(const Scenario& sc, const Trajectory& tr, const AnalysisOptions& opts = {});

}  // namespace qcorr
