#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qcorr {

/// Values on a uniform, ascending time grid.
class TimeSeries {
 public:
  /// Throws DomainError for fewer than 2 points, mismatched lengths, or a grid
  /// that is not ascending and uniform to 1e-12 (relative to the span).
  TimeSeries(std::vector<double> times, std::vector<double> values);

  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return times_.size(); }
  double step() const { return times_[1] - times_[0]; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

struct Interval {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Plateau {
  double start = 0.0;
  double end = 0.0;
  double level = 0.0;
  double length() const { return end - start; }
};

inline constexpr double kDeathEps = 1e-6;

/// Maximal runs of at least two samples with value <= eps. Interior endpoints are
/// moved to the linearly interpolated eps crossing.
std::vector<Interval> detect_death_intervals(const TimeSeries& s, double eps = kDeathEps);

struct PlateauOptions {
  int window = 32;
  double slope_eps = 1e-3;
  double level_eps = 1e-3;
  friend bool operator==(const PlateauOptions&, const PlateauOptions&) = default;
};

/// Maximal runs in which every sliding window of `window` samples has a least-squares
/// slope of magnitude <= slope_eps and the whole run stays within level_eps.
/// The level is the value at the run's midpoint sample. Throws DomainError for window < 3.
std::vector<Plateau> detect_plateaus(const TimeSeries& s, const PlateauOptions& opts = {});

/// pi |delta| / (2 g^2), the revival period of |c0|.
/// Throws ZeroCouplingError for g = 0 and ZeroDetuningError for delta = 0.
double period_theory(double g, double delta);

/// First autocorrelation maximum above 0.9 after the zero-lag lobe, refined by a
/// parabola through the neighbouring lags. Throws NoPeriodError if there is none.
double period_empirical(const TimeSeries& s);

enum class SyncClass { synchronized, anti_synchronized, mixed };

std::string_view to_string(SyncClass c);

struct SyncResult {
  SyncClass classification = SyncClass::mixed;
  double pearson_r = 0.0;
  bool degenerate = false;  // one of the series is constant, r undefined
  std::size_t samples_used = 0;
};

/// Pearson r of two series on the same grid, over the largest whole number of
/// periods that fits (all samples when period <= 0 or less than one period fits).
/// Throws DimensionMismatchError if the grids differ.
SyncResult sync_classify(const TimeSeries& c, const TimeSeries& d, double period,
                         double threshold = 0.5);

/// Longest plateau lying entirely inside one of the death intervals (0 if none).
double plateau_lifetime(const std::vector<Plateau>& plateaus, const std::vector<Interval>& deaths);

struct AnalysisOptions {
  double death_eps = kDeathEps;
  PlateauOptions plateau;
  double sync_threshold = 0.5;
  friend bool operator==(const AnalysisOptions&, const AnalysisOptions&) = default;
};

struct AnalysisReport {
  std::vector<Interval> death_intervals_C;
  std::vector<Interval> death_intervals_D;
  std::vector<Plateau> plateaus_D;
  double period_theory = 0.0;
  std::optional<double> period_empirical;  // empty when |c0| does not oscillate
  SyncResult sync;
  double plateau_lifetime = 0.0;
  AnalysisOptions options;
};

}  // namespace qcorr
