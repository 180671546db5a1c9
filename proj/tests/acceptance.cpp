// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <qcorr/analysis.hpp>
#include <qcorr/correlations.hpp>
#include <qcorr/device.hpp>
#include <qcorr/dynamics.hpp>
#include <qcorr/simulation.hpp>

using namespace qcorr;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

double max_diff(const Trajectory& a, const Trajectory& b, double CorrelationSample::*f) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.samples.size(); ++k) worst = std::max(worst, std::abs(a.samples[k].*f - b.samples[k].*f));
  return worst;
}

XStateParams random_physical(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    XStateParams p{u(rng), u(rng), u(rng)};
    if (p.physical(0.0)) return p;
  }
}

Scenario random_scenario(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario sc;
  sc.state = random_physical(rng);
  sc.alpha = std::polar(3.0 * u(rng), 2.0 * pi * u(rng));
  const double g = 0.5 + 1.5 * u(rng);
  sc.model = ModelParams::identical(g, g * (5.0 + 35.0 * u(rng)), 100.0);
  sc.samples = samples;
  return sc;
}

Scenario worked(double alpha = 2.0, double delta = 10.0) {
  Scenario sc;
  sc.alpha = alpha;
  sc.model = ModelParams::identical(1.0, delta, 100.0);
  return sc;
}

double lifetime_of(const Scenario& sc) { return analyze(sc, simulate(sc, EngineKind::closed)).plateau_lifetime; }

Outcome exact_anchors() {
  Outcome o;
  Scenario sc;
  sc.samples = 16;
  sc.state = {1.0, -1.0, 1.0};
  const auto bell = simulate(sc, EngineKind::closed).samples.front();
  o.require(std::abs(bell.concurrence - 1.0) <= 1e-12, "Bell C(0) = 1");
  o.require(std::abs(bell.discord - 1.0) <= 1e-12, "Bell D(0) = 1");
  o.require(std::abs(bell.mutual_info - 2.0) <= 1e-12, "Bell I(0) = 2");
  o.require(std::abs(bell.classical_corr - 1.0) <= 1e-12, "Bell classical correlation = 1");
  sc.state = {0.0, 0.0, 0.0};
  const auto mixed = simulate(sc, EngineKind::closed).samples.front();
  for (double v : {mixed.concurrence, mixed.discord, mixed.mutual_info, mixed.classical_corr}) {
    o.require(std::abs(v) <= 1e-12, "identity/4 correlations vanish");
  }
  o.note(fmt::format("Bell C={:.15g} D={:.15g} I={:.15g}", bell.concurrence, bell.discord, bell.mutual_info));
  return o;
}

Outcome closed_vs_effective() {
  Outcome o;
  const Scenario sc = worked();
  const auto closed = simulate(sc, EngineKind::closed);
  const auto eff = simulate(sc, EngineKind::effective);
  const double dc = max_diff(closed, eff, &CorrelationSample::concurrence);
  const double dd = max_diff(closed, eff, &CorrelationSample::discord);
  o.require(dc <= 1e-8, "max |dC| <= 1e-8");
  o.require(dd <= 1e-8, "max |dD| <= 1e-8");
  o.note(fmt::format("n_max={} max|dC|={:.3g} max|dD|={:.3g}", eff.n_max, dc, dd));
  return o;
}

Outcome dispersive_convergence() {
  Outcome o;
  // Frozen from tests/oracles/jc_deviation.py (dense Hamiltonian, Wootters concurrence).
  const double frozen_dc[] = {0.3, 0.190275311438, 0.0527183129403};
  const double deltas[] = {10.0, 20.0, 40.0};
  double prev_c = INFINITY, prev_d = INFINITY;
  std::string values;
  for (int i = 0; i < 3; ++i) {
    const Scenario sc = worked(2.0, deltas[i]);
    const auto closed = simulate(sc, EngineKind::closed);
    const auto jc = simulate(sc, EngineKind::jaynes_cummings);
    const double dc = max_diff(closed, jc, &CorrelationSample::concurrence);
    const double dd = max_diff(closed, jc, &CorrelationSample::discord);
    o.require(dc < prev_c, fmt::format("C deviation decreases at delta={}", deltas[i]));
    o.require(dd < prev_d, fmt::format("D deviation decreases at delta={}", deltas[i]));
    o.require(std::abs(dc - frozen_dc[i]) <= 1e-8, fmt::format("C deviation matches reference at delta={}", deltas[i]));
    prev_c = dc;
    prev_d = dd;
    values += fmt::format(" delta={}: dC={:.12g} dD={:.6g}", deltas[i], dc, dd);
  }
  o.note(values.substr(1));
  return o;
}

Outcome discord_oracle() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const XStateParams p = random_physical(rng);
    const cplx alpha = std::polar(3.0 * u(rng), 2.0 * pi * u(rng));
    const double g = 0.5 + 1.5 * u(rng);
    const ModelParams mp = ModelParams::identical(g, g * (5.0 + 35.0 * u(rng)), 100.0);
    const double t = 2.0 * period_theory(mp.g, mp.delta1()) * u(rng);
    const auto rho = evolve_x_closed(p, alpha, mp, t);
    const double d_bf = mutual_information(rho) - classical_correlation_bruteforce(rho, 64).value;
    worst = std::max(worst, std::abs(discord(rho) - d_bf));
  }
  o.require(worst <= 1e-6, "|D_closed - D_bruteforce| <= 1e-6");
  o.note(fmt::format("max deviation {:.3g} over 200 states", worst));
  return o;
}

Outcome concurrence_oracle() {
  Outcome o;
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const XStateParams p = random_physical(rng);
    const cplx alpha = std::polar(3.0 * u(rng), 2.0 * pi * u(rng));
    const double g = 0.5 + 1.5 * u(rng);
    const ModelParams mp = ModelParams::identical(g, g * (5.0 + 35.0 * u(rng)), 100.0);
    const double t = 2.0 * period_theory(mp.g, mp.delta1()) * u(rng);
    const auto rho = evolve_x_closed(p, alpha, mp, t);
    worst = std::max(worst, std::abs(concurrence_x(rho) - concurrence_general(rho)));
  }
  o.require(worst <= 1e-10, "|C_x - C_wootters| <= 1e-10");
  o.note(fmt::format("max deviation {:.3g} over 1000 states", worst));
  return o;
}

Outcome periodicity() {
  Outcome o;
  const Scenario sc = worked();
  const double period = period_theory(1.0, 10.0);
  o.require(std::abs(period - 5.0 * pi) <= 1e-12, "T = 5 pi");
  double worst = 0.0;
  for (int k = 0; k < 1024; ++k) {
    const double t = 2.0 * period * k / 1024.0;
    const auto a = evaluate_correlations(evolve_x_closed(sc.state, sc.alpha, sc.model, t), t);
    const auto b = evaluate_correlations(evolve_x_closed(sc.state, sc.alpha, sc.model, t + period), t + period);
    worst = std::max({worst, std::abs(a.concurrence - b.concurrence), std::abs(a.discord - b.discord)});
  }
  o.require(worst <= 1e-9, "|f(t+T) - f(t)| <= 1e-9");
  const auto tr = simulate(sc, EngineKind::closed);
  const auto rep = analyze(sc, tr);
  const double step = resolved_t_max(sc) / sc.samples;
  o.require(rep.period_empirical.has_value(), "empirical period found");
  if (rep.period_empirical) {
    o.require(std::abs(*rep.period_empirical - period) <= step, "empirical period within one grid step");
    o.note(fmt::format("empirical T={:.6f} theory T={:.6f} step={:.4g}", *rep.period_empirical, period, step));
  }
  o.note(fmt::format("max periodic defect {:.3g}", worst));
  return o;
}

Outcome sudden_death_and_plateau() {
  Outcome o;
  const Scenario sc = worked();
  const auto tr = simulate(sc, EngineKind::closed);
  const auto rep = analyze(sc, tr);
  o.require(!rep.death_intervals_C.empty(), "C has a death interval");

  // Discord at the deepest collapse, |c0| = |c1 - c2| e^{-8}.
  Eigen::Matrix4cd m = x_state_matrix(sc.state).matrix();
  m(kSS, kTT) = m(kTT, kSS) = std::abs(sc.state.c1 - sc.state.c2) * std::exp(-8.0) / 4.0;
  const double expected = discord(DensityMatrix4(m));

  const Plateau* inside = nullptr;
  for (const auto& p : rep.plateaus_D) {
    for (const auto& d : rep.death_intervals_C) {
      if (p.start >= d.start && p.end <= d.end && (!inside || p.length() > inside->length())) inside = &p;
    }
  }
  o.require(inside != nullptr, "a D plateau lies inside a C death interval");
  if (inside) {
    o.require(std::abs(inside->level - expected) <= 1e-3, "plateau level within 1e-3 of the analytic value");
    o.note(fmt::format("plateau [{:.4f}, {:.4f}] level {:.11f}, analytic {:.11f}", inside->start, inside->end,
                       inside->level, expected));
  }
  o.note(fmt::format("{} death intervals of C", rep.death_intervals_C.size()));
  return o;
}

Outcome monotone_lifetimes() {
  Outcome o;
  std::string by_alpha, by_delta;
  double prev = -1.0;
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    const double l = lifetime_of(worked(a, 10.0));
    o.require(l >= prev, fmt::format("lifetime nondecreasing at alpha={}", a));
    prev = l;
    by_alpha += fmt::format(" {:.4f}", l);
  }
  prev = -1.0;
  for (double d : {10.0, 20.0, 30.0}) {
    const double l = lifetime_of(worked(2.0, d));
    o.require(l >= prev, fmt::format("lifetime nondecreasing at delta={}", d));
    prev = l;
    by_delta += fmt::format(" {:.4f}", l);
  }
  o.note("alpha 0.5/1/2/3:" + by_alpha + "; delta 10/20/30:" + by_delta);
  return o;
}

Outcome synchronization() {
  Outcome o;
  // Frozen from tests/oracles/sync_pearson.py (analytic C and D on the same grid).
  const double frozen_r = -0.862964024709701;
  const Scenario sc = worked();
  const auto rep = analyze(sc, simulate(sc, EngineKind::closed));
  o.require(rep.sync.classification == SyncClass::anti_synchronized, "classified anti_synchronized");
  o.require(rep.sync.pearson_r <= -0.5, "r <= -0.5");
  o.require(std::abs(rep.sync.pearson_r - frozen_r) <= 1e-9, "r matches reference");
  o.note(fmt::format("r={:.15g} ({})", rep.sync.pearson_r, to_string(rep.sync.classification)));
  return o;
}

Outcome invariants() {
  Outcome o;
  std::mt19937_64 rng(2026);
  std::size_t checked = 0;
  double worst_unitarity = 0.0, worst_identity = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Scenario sc = random_scenario(rng, 64);
    const auto tr = simulate(sc, EngineKind::closed);
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
      const auto& s = tr.samples[k];
      const bool ok = s.concurrence >= 0.0 && s.concurrence <= 1.0 && s.discord >= -1e-12 &&
                      s.discord <= s.mutual_info + 1e-12 && s.mutual_info <= 2.0 + 1e-12;
      if (!ok) {
        o.require(false, fmt::format("bounds at scenario {} t={}", i, s.t));
        return o;
      }
      worst_identity = std::max(worst_identity, std::abs(s.discord - (s.mutual_info - s.classical_corr)));
      if (!validate_density(tr.states[k]).passed) {
        o.require(false, fmt::format("density validity at scenario {} t={}", i, s.t));
        return o;
      }
      ++checked;
    }
    const auto& mp = sc.model;
    const double x = chi(mp.g, mp.delta1(), mp.delta2());
    for (double n : {0.0, 10.0, 40.0}) {
      const double o1 = omega_eff(mp.omega1, mp.g, mp.delta1(), n);
      const double o2 = omega_eff(mp.omega2, mp.g, mp.delta2(), n);
      const auto es = eigensystem(o1, o2, x);
      for (double t : {0.0, 1.0, tr.samples.back().t}) {
        worst_unitarity = std::max(worst_unitarity, propagator(es, t).unitarity_defect());
      }
    }
  }
  o.require(worst_identity <= 1e-12, "D = I - classical correlation to 1e-12");
  o.require(worst_unitarity <= 1e-12, "propagator unitarity <= 1e-12");
  o.note(fmt::format("{} samples; max identity defect {:.3g}; max unitarity defect {:.3g}", checked, worst_identity,
                     worst_unitarity));
  return o;
}

Outcome device_algebra() {
  Outcome o;
  const DeviceGeometry base;
  for (double current : {0.0, current_amplitude(base), -2e-7}) {
    DeviceGeometry geo = base;
    geo.delta_BN_z = 3e-4;
    o.require(field_gradient(geo, current, switch_field(geo, current)) == 0.0, "switch residual exactly zero");
  }
  const double g0 = coupling_g(base);
  auto rel = [&](const DeviceGeometry& geo, double factor) { return std::abs(coupling_g(geo) / (g0 * factor) - 1.0); };
  DeviceGeometry geo = base;
  geo.r = 3.0 * base.r;
  double worst = rel(geo, 1.0 / 3.0);
  geo = base;
  geo.omega_r = 4.0 * base.omega_r;
  worst = std::max(worst, rel(geo, 2.0));
  geo = base;
  geo.L = 4.0 * base.L;
  geo.l = 4.0 * base.l;
  worst = std::max(worst, rel(geo, 0.25));
  o.require(worst <= 1e-12, "coupling scaling laws to 1e-12 relative");
  const double x = chi(1.0, 10.0, 10.0);
  o.require(std::abs(x - 0.1) <= 1e-15, "chi(1, 10, 10) = 0.1");
  o.note(fmt::format("max scaling defect {:.3g}; chi={:.17g}; g={:.6f} rad/s", worst, x, g0));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact anchors", 1.0, exact_anchors},
      {2, "closed form vs effective engine", 60.0, closed_vs_effective},
      {3, "dispersive convergence of the full model", 300.0, dispersive_convergence},
      {4, "discord vs brute-force measurement", 120.0, discord_oracle},
      {5, "concurrence vs Wootters", 10.0, concurrence_oracle},
      {6, "periodicity", 0.0, periodicity},
      {7, "sudden death with stationary discord", 0.0, sudden_death_and_plateau},
      {8, "monotone plateau lifetime", 0.0, monotone_lifetimes},
      {9, "synchronization", 0.0, synchronization},
      {10, "invariants over random scenarios", 0.0, invariants},
      {11, "device algebra", 0.0, device_algebra},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0) o.require(secs < c.budget_s, fmt::format("runtime under {} s", c.budget_s));
    if (!o.pass) ++failures;
    std::printf("%s %2d %-42s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
