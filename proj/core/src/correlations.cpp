#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kMarginalTol = 1e-10;
constexpr double kAngleTol = 1e-10;

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

void require_x(const DensityMatrix4& rho) {
  const double worst = rho.non_x_magnitude();
  if (!(worst < kXStructureTol)) {
    throw NotXStateError("state has non-X entries of magnitude " + std::to_string(worst));
  }
}

// Eigenvalues of the 2x2 Hermitian [[x, z], [conj(z), y]], larger first.
std::array<double, 2> eig2(double x, double y, cplx z) {
  const double mean = 0.5 * (x + y);
  const double r = std::hypot(0.5 * (x - y), std::abs(z));
  return {mean + r, mean - r};
}

double entropy2(const Eigen::Matrix2cd& m) {
  const auto ev = eig2(m(0, 0).real(), m(1, 1).real(), m(0, 1));
  return shannon_entropy(ev);
}

Eigen::Matrix4cd hermitian_part(const DensityMatrix4& rho) {
  return (rho.matrix() + rho.matrix().adjoint()) / 2.0;
}

// Unnormalised conditional state of the unmeasured qubit after projecting the
// measured one onto |v>.
Eigen::Matrix2cd project(const Eigen::Matrix4cd& m, const Eigen::Vector2cd& v, MeasuredQubit measured) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int x = 0; x < 2; ++x) {
    for (int xp = 0; xp < 2; ++xp) {
      cplx acc(0.0, 0.0);
      for (int y = 0; y < 2; ++y) {
        for (int yp = 0; yp < 2; ++yp) {
          const int row = measured == MeasuredQubit::b ? 2 * x + y : 2 * y + x;
          const int col = measured == MeasuredQubit::b ? 2 * xp + yp : 2 * yp + xp;
          acc += std::conj(v(y)) * m(row, col) * v(yp);
        }
      }
      out(x, xp) = acc;
    }
  }
  return out;
}

std::array<Eigen::Vector2cd, 2> measurement_basis(MeasurementAngles a) {
  const double c = std::cos(a.varphi);
  const double s = std::sin(a.varphi);
  Eigen::Vector2cd par(c, std::polar(s, a.phi));
  Eigen::Vector2cd perp(std::polar(s, -a.phi), -c);
  return {par, perp};
}

// Golden-section maximisation of f on [lo, hi]; returns the best abscissa seen.
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace

bool is_x_state(const DensityMatrix4& rho) { return rho.non_x_magnitude() < kXStructureTol; }

bool has_maximally_mixed_marginals(const DensityMatrix4& rho) {
  if (!is_x_state(rho)) return false;
  const Eigen::Matrix2cd half = Eigen::Matrix2cd::Identity() / 2.0;
  return (rho.reduced_a() - half).cwiseAbs().maxCoeff() <= kMarginalTol &&
         (rho.reduced_b() - half).cwiseAbs().maxCoeff() <= kMarginalTol;
}

XCoefficients x_coefficients(const DensityMatrix4& rho) {
  require_x(rho);
  if (!has_maximally_mixed_marginals(rho)) {
    throw NotXStateError("X-state closed forms need maximally mixed marginals");
  }
  XCoefficients c;
  c.c3 = (rho(kSS, kSS) + rho(kTT, kTT) - rho(kST, kST) - rho(kTS, kTS)).real();
  c.abs_c12 = 4.0 * std::abs(rho(kST, kTS));
  c.abs_c0 = 4.0 * std::abs(rho(kSS, kTT));
  return c;
}

double concurrence_x(const DensityMatrix4& rho) {
  require_x(rho);
  auto geo = [&](int i, int j) {
    return std::sqrt(std::max(0.0, rho(i, i).real()) * std::max(0.0, rho(j, j).real()));
  };
  const double l1 = std::abs(rho(kSS, kTT)) - geo(kST, kTS);
  const double l2 = std::abs(rho(kST, kTS)) - geo(kSS, kTT);
  return 2.0 * std::max({0.0, l1, l2});
}

double concurrence_general(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(hermitian_part(rho));
  const Eigen::Vector4d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();

  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();  // sigma_y (x) sigma_y
  flip(0, 3) = flip(3, 0) = -1.0;
  flip(1, 2) = flip(2, 1) = 1.0;
  const Eigen::Matrix4cd sqrt_tilde = flip * sqrt_rho.conjugate() * flip;

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(sqrt_rho * sqrt_tilde);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

std::array<double, 4> x_eigenvalues(const DensityMatrix4& rho) {
  require_x(rho);
  const auto inner = eig2(rho(kST, kST).real(), rho(kTS, kTS).real(), rho(kST, kTS));
  const auto outer = eig2(rho(kSS, kSS).real(), rho(kTT, kTT).real(), rho(kSS, kTT));
  return {inner[0], inner[1], outer[0], outer[1]};
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p < -kPositivityTol) {
      throw PhysicalityError("negative probability " + std::to_string(p) + " in entropy");
    }
    h -= xlog2x(std::clamp(p, 0.0, 1.0));
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
  const Eigen::Vector4d ev = es.eigenvalues();
  return shannon_entropy(std::span<const double>(ev.data(), 4));
}

double mutual_information_x(const DensityMatrix4& rho) {
  x_coefficients(rho);
  const auto ev = x_eigenvalues(rho);
  return 2.0 - shannon_entropy(ev);
}

double mutual_information(const DensityMatrix4& rho) {
  return entropy2(rho.reduced_a()) + entropy2(rho.reduced_b()) - von_neumann_entropy(rho);
}

double binary_entropy_f(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0 + 1e-12)) {
    throw DomainError("Gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  const double g = std::min(gamma, 1.0);
  return -xlog2x((1.0 + g) / 2.0) - xlog2x((1.0 - g) / 2.0);
}

ClassicalCorrelation classical_correlation_x(const DensityMatrix4& rho) {
  const auto c = x_coefficients(rho);
  ClassicalCorrelation cc;
  cc.gamma = std::min(1.0, std::max(std::abs(c.c3), c.c4()));
  cc.value = 1.0 - binary_entropy_f(cc.gamma);
  return cc;
}

std::array<double, 2> outcome_probabilities(const DensityMatrix4& rho, MeasurementAngles angles,
                                            MeasuredQubit measured) {
  const auto m = hermitian_part(rho);
  const auto basis = measurement_basis(angles);
  return {project(m, basis[0], measured).trace().real(), project(m, basis[1], measured).trace().real()};
}

double classical_correlation_at(const DensityMatrix4& rho, MeasurementAngles angles, MeasuredQubit measured) {
  const auto m = hermitian_part(rho);
  const Eigen::Matrix2cd unmeasured = measured == MeasuredQubit::b ? rho.reduced_a() : rho.reduced_b();
  double conditional = 0.0;
  for (const auto& v : measurement_basis(angles)) {
    const Eigen::Matrix2cd block = project(m, v, measured);
    const double p = block.trace().real();
    if (p <= 0.0) continue;
    conditional += p * entropy2(block / p);
  }
  return entropy2((unmeasured + unmeasured.adjoint()) / 2.0) - conditional;
}

double conditional_gamma_x(const DensityMatrix4& rho, MeasurementAngles angles) {
  const auto c = x_coefficients(rho);
  const cplx eps = 4.0 * (rho(kST, kTS) * std::polar(1.0, -angles.phi) + rho(kSS, kTT) * std::polar(1.0, angles.phi));
  const double c2p = std::cos(2.0 * angles.varphi);
  const double s2p = std::sin(2.0 * angles.varphi);
  return std::sqrt(c.c3 * c.c3 * c2p * c2p + std::norm(eps) / 4.0 * s2p * s2p);
}

MeasuredCorrelation classical_correlation_bruteforce(const DensityMatrix4& rho, int grid_n,
                                                     MeasuredQubit measured) {
  if (grid_n < 8) throw GridTooCoarse("measurement grid needs at least 8 points per angle");
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double d_varphi = half_pi / (grid_n - 1);
  const double d_phi = two_pi / grid_n;

  auto objective = [&](double varphi, double phi) {
    return classical_correlation_at(rho, {varphi, phi}, measured);
  };

  MeasuredCorrelation best{-1.0, {}};
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const MeasurementAngles a{i * d_varphi, j * d_phi};
      const double v = objective(a.varphi, a.phi);
      if (v > best.value) best = {v, a};
    }
  }

  // Coordinate refinement inside the neighbouring grid cells.
  MeasurementAngles cur = best.angles;
  for (int round = 0; round < 100; ++round) {
    const MeasurementAngles prev = cur;
    cur.varphi = golden_max([&](double x) { return objective(x, cur.phi); },
                            std::max(0.0, cur.varphi - d_varphi), std::min(half_pi, cur.varphi + d_varphi),
                            kAngleTol);
    cur.phi = golden_max([&](double x) { return objective(cur.varphi, x); }, cur.phi - d_phi, cur.phi + d_phi,
                         kAngleTol);
    cur.phi = std::fmod(cur.phi, two_pi);
    if (cur.phi < 0.0) cur.phi += two_pi;
    const double moved = std::max(std::abs(cur.varphi - prev.varphi),
                                  std::abs(std::remainder(cur.phi - prev.phi, two_pi)));
    if (moved < kAngleTol) break;
  }
  const double refined = objective(cur.varphi, cur.phi);
  if (refined > best.value) best = {refined, cur};
  return best;
}

double discord(const DensityMatrix4& rho) {
  return mutual_information_x(rho) - classical_correlation_x(rho).value;
}

namespace {

double branch_discord(const DensityMatrix4& rho, double gamma) {
  // 2 + sum lambda log2 lambda - sum_m gamma_m/2 log2 gamma_m, gamma_m = 1 -+ gamma
  double s = 2.0;
  for (double l : x_eigenvalues(rho)) s += xlog2x(std::clamp(l, 0.0, 1.0));
  for (double gm : {1.0 - gamma, 1.0 + gamma}) s -= 0.5 * xlog2x(gm);
  return s;
}

}  // namespace

double discord_c3_branch(const DensityMatrix4& rho) {
  return branch_discord(rho, std::abs(x_coefficients(rho).c3));
}

double discord_c4_branch(const DensityMatrix4& rho) {
  return branch_discord(rho, std::min(1.0, x_coefficients(rho).c4()));
}

DiscordRegime discord_regime(const XStateParams& p, double abs_alpha) {
  const double twice_c3 = 2.0 * std::abs(p.c3);
  const double diff = std::abs(p.c1 - p.c2);
  const double sum = std::abs(p.c1 + p.c2);
  if (twice_c3 > diff + sum) return DiscordRegime::c3_branch;
  if (twice_c3 < diff * std::exp(-2.0 * abs_alpha * abs_alpha) + sum) return DiscordRegime::c4_branch;
  return DiscordRegime::intermediate;
}

CorrelationSample evaluate_correlations(const DensityMatrix4& rho, double t, const EvaluateOptions& opts) {
  CorrelationSample s;
  s.t = t;
  s.abs_c0 = 4.0 * std::abs(rho(kSS, kTT));
  if (has_maximally_mixed_marginals(rho)) {
    s.concurrence = concurrence_x(rho);
    s.mutual_info = mutual_information_x(rho);
    const auto cc = classical_correlation_x(rho);
    s.classical_corr = cc.value;
    s.gamma = cc.gamma;
  } else {
    s.concurrence = concurrence_general(rho);
    s.mutual_info = mutual_information(rho);
    s.classical_corr = classical_correlation_bruteforce(rho, opts.bruteforce_grid, opts.measured).value;
    const double c3 = (rho(kSS, kSS) + rho(kTT, kTT) - rho(kST, kST) - rho(kTS, kTS)).real();
    const double c4 = 2.0 * (std::abs(rho(kST, kTS)) + std::abs(rho(kSS, kTT)));
    s.gamma = std::clamp(std::max(std::abs(c3), c4), 0.0, 1.0);
  }
  s.discord = s.mutual_info - s.classical_corr;
  return s;
}

}  // namespace qcorr
