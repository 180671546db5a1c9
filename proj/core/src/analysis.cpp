#include "qcorr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() < 2) throw DomainError("time series needs at least 2 samples");
  if (times_.size() != values_.size()) {
    throw DomainError("time series has " + std::to_string(times_.size()) + " times but " +
                      std::to_string(values_.size()) + " values");
  }
  const double dt = times_[1] - times_[0];
  if (!(dt > 0.0)) throw DomainError("time grid must be ascending");
  const double tol = 1e-12 * std::max(1.0, std::abs(times_.back()));
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (std::abs(times_[k] - times_[0] - dt * static_cast<double>(k)) > tol) {
      throw DomainError("time grid is not uniform at sample " + std::to_string(k));
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("time series contains a non-finite value");
  }
}

std::vector<Interval> detect_death_intervals(const TimeSeries& s, double eps) {
  if (!(eps > 0.0)) throw DomainError("death threshold must be positive");
  const auto t = s.times();
  const auto v = s.values();
  const std::size_t n = s.size();

  auto crossing = [&](std::size_t above, std::size_t below) {
    const double frac = (v[above] - eps) / (v[above] - v[below]);
    return t[above] + frac * (t[below] - t[above]);
  };

  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < n) {
    if (v[i] > eps) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] <= eps) ++j;
    if (j > i) {
      Interval iv{t[i], t[j]};
      if (i > 0) iv.start = crossing(i - 1, i);
      if (j + 1 < n) iv.end = crossing(j + 1, j);
      out.push_back(iv);
    }
    i = j + 1;
  }
  return out;
}

namespace {

// Least-squares slope of v[begin, begin + len) on a uniform grid of step dt.
double ls_slope(std::span<const double> v, std::size_t begin, std::size_t len, double dt) {
  const double xm = 0.5 * static_cast<double>(len - 1);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double x = static_cast<double>(k) - xm;
    sxy += x * v[begin + k];
    sxx += x * x;
  }
  return sxy / sxx / dt;
}

}  // namespace

std::vector<Plateau> detect_plateaus(const TimeSeries& s, const PlateauOptions& opts) {
  if (opts.window < 3) throw DomainError("plateau window must be at least 3 samples");
  const auto w = static_cast<std::size_t>(opts.window);
  const auto t = s.times();
  const auto v = s.values();
  const std::size_t n = s.size();
  const double dt = s.step();

  std::vector<Plateau> out;
  if (n < w) return out;

  auto window_ok = [&](std::size_t begin) { return std::abs(ls_slope(v, begin, w, dt)) <= opts.slope_eps; };

  std::size_t i = 0;
  while (i + w <= n) {
    const auto [lo_it, hi_it] = std::minmax_element(v.begin() + i, v.begin() + i + w);
    double lo = *lo_it, hi = *hi_it;
    if (hi - lo > opts.level_eps || !window_ok(i)) {
      ++i;
      continue;
    }
    std::size_t end = i + w;  // one past the run
    while (end < n) {
      const double nlo = std::min(lo, v[end]);
      const double nhi = std::max(hi, v[end]);
      if (nhi - nlo > opts.level_eps || !window_ok(end + 1 - w)) break;
      lo = nlo;
      hi = nhi;
      ++end;
    }
    out.push_back({t[i], t[end - 1], v[i + (end - 1 - i) / 2]});
    i = end;
  }
  return out;
}

double period_theory(double g, double delta) {
  if (g == 0.0) throw ZeroCouplingError();
  if (delta == 0.0) throw ZeroDetuningError();
  return std::numbers::pi * std::abs(delta) / (2.0 * g * g);
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b, bool* degenerate = nullptr) {
  const std::size_t n = a.size();
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double da = a[k] - ma;
    const double db = b[k] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  // relative to the mean so that offset constants do not look like signal
  const double floor_a = 1e-24 * static_cast<double>(n) * std::max(1.0, ma * ma);
  const double floor_b = 1e-24 * static_cast<double>(n) * std::max(1.0, mb * mb);
  if (saa <= floor_a || sbb <= floor_b) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  if (degenerate) *degenerate = false;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

double period_empirical(const TimeSeries& s) {
  const auto v = s.values();
  const std::size_t n = s.size();
  const std::size_t max_lag = 3 * n / 4;
  if (max_lag < 3) throw NoPeriodError("series too short for an autocorrelation period");

  std::vector<double> r(max_lag + 1, 1.0);
  for (std::size_t k = 1; k <= max_lag; ++k) {
    bool degenerate = false;
    r[k] = pearson(v.subspan(0, n - k), v.subspan(k), &degenerate);
    if (degenerate) throw NoPeriodError("series is constant");
  }

  constexpr double kPeak = 0.9;
  std::size_t k = 1;
  while (k <= max_lag && r[k] >= kPeak) ++k;  // zero-lag lobe
  while (k <= max_lag && r[k] <= kPeak) ++k;
  if (k >= max_lag) throw NoPeriodError("no autocorrelation maximum above 0.9");
  while (k < max_lag && r[k + 1] > r[k]) ++k;
  if (k >= max_lag) throw NoPeriodError("autocorrelation still rising at the largest lag");

  const double denom = r[k - 1] - 2.0 * r[k] + r[k + 1];
  const double offset = denom != 0.0 ? 0.5 * (r[k - 1] - r[k + 1]) / denom : 0.0;
  return (static_cast<double>(k) + offset) * s.step();
}

std::string_view to_string(SyncClass c) {
  switch (c) {
    case SyncClass::synchronized:
      return "synchronized";
    case SyncClass::anti_synchronized:
      return "anti_synchronized";
    case SyncClass::mixed:
      break;
  }
  return "mixed";
}

SyncResult sync_classify(const TimeSeries& c, const TimeSeries& d, double period, double threshold) {
  if (c.size() != d.size()) {
    throw DimensionMismatchError("series lengths differ: " + std::to_string(c.size()) + " vs " +
                                 std::to_string(d.size()));
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(c.times().back()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c.times()[k] - d.times()[k]) > tol) throw DimensionMismatchError("series grids differ");
  }

  std::size_t m = c.size();
  const double dt = c.step();
  if (period > 0.0) {
    const double periods = std::floor(static_cast<double>(c.size()) * dt / period + 1e-9);
    if (periods >= 1.0) {
      m = std::min(m, static_cast<std::size_t>(std::llround(periods * period / dt)));
    }
  }

  SyncResult res;
  res.samples_used = m;
  res.pearson_r = pearson(c.values().subspan(0, m), d.values().subspan(0, m), &res.degenerate);
  if (!res.degenerate) {
    if (res.pearson_r >= threshold) {
      res.classification = SyncClass::synchronized;
    } else if (res.pearson_r <= -threshold) {
      res.classification = SyncClass::anti_synchronized;
    }
  }
  return res;
}

double plateau_lifetime(const std::vector<Plateau>& plateaus, const std::vector<Interval>& deaths) {
  double best = 0.0;
  for (const auto& p : plateaus) {
    for (const auto& d : deaths) {
      if (p.start >= d.start && p.end <= d.end) best = std::max(best, p.length());
    }
  }
  return best;
}

}  // namespace qcorr
