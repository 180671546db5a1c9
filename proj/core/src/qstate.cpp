#include "qcorr/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcorr/errors.hpp"

namespace qcorr {

std::array<double, 4> XStateParams::eigenvalues() const {
  const double sum = std::abs(c1 + c2);
  const double diff = std::abs(c1 - c2);
  return {(1.0 - c3 + sum) / 4.0, (1.0 - c3 - sum) / 4.0, (1.0 + c3 + diff) / 4.0,
          (1.0 + c3 - diff) / 4.0};
}

bool XStateParams::physical(double tol) const {
  if (std::abs(c1) > 1.0 || std::abs(c2) > 1.0 || std::abs(c3) > 1.0) return false;
  const auto ev = eigenvalues();
  return std::ranges::all_of(ev, [tol](double v) { return v >= -tol; });
}

DensityMatrix4 DensityMatrix4::checked(const Matrix& m) {
  DensityMatrix4 rho(m);
  const auto report = validate_density(rho);
  if (!report.passed) {
    throw PhysicalityError("invalid density matrix: hermiticity defect " +
                           std::to_string(report.hermiticity_defect) + ", trace defect " +
                           std::to_string(report.trace_defect) + ", min eigenvalue " +
                           std::to_string(report.min_eigenvalue));
  }
  return rho;
}

Eigen::Matrix2cd DensityMatrix4::reduced_a() const {
  Eigen::Matrix2cd r;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap) r(a, ap) = m_(2 * a, 2 * ap) + m_(2 * a + 1, 2 * ap + 1);
  return r;
}

Eigen::Matrix2cd DensityMatrix4::reduced_b() const {
  Eigen::Matrix2cd r;
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp) r(b, bp) = m_(b, bp) + m_(2 + b, 2 + bp);
  return r;
}

double DensityMatrix4::non_x_magnitude() const {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      worst = std::max(worst, std::abs(m_(i, j)));
    }
  }
  return worst;
}

ValidationReport validate_density(const DensityMatrix4& rho) {
  const auto& m = rho.matrix();
  ValidationReport r;
  r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(m.trace() - cplx(1.0, 0.0));
  const Eigen::Matrix4cd herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.passed = std::isfinite(r.hermiticity_defect) && std::isfinite(r.trace_defect) &&
             r.hermiticity_defect <= kHermiticityTol && r.trace_defect <= kTraceTol &&
             r.min_eigenvalue >= -kPositivityTol;
  return r;
}

namespace {

DensityMatrix4::Matrix x_matrix(const XStateParams& p) {
  DensityMatrix4::Matrix m = DensityMatrix4::Matrix::Zero();
  m(kSS, kSS) = m(kTT, kTT) = (1.0 + p.c3) / 4.0;
  m(kST, kST) = m(kTS, kTS) = (1.0 - p.c3) / 4.0;
  m(kSS, kTT) = m(kTT, kSS) = (p.c1 - p.c2) / 4.0;
  m(kST, kTS) = m(kTS, kST) = (p.c1 + p.c2) / 4.0;
  return m;
}

}  // namespace

DensityMatrix4 x_state_matrix(const XStateParams& p) { return DensityMatrix4(x_matrix(p)); }

DensityMatrix4 make_x_state(const XStateParams& p) {
  if (std::abs(p.c1) > 1.0 || std::abs(p.c2) > 1.0 || std::abs(p.c3) > 1.0) {
    throw PhysicalityError("X-state coefficients must satisfy |c_i| <= 1");
  }
  const auto ev = p.eigenvalues();
  const double lowest = *std::ranges::min_element(ev);
  if (lowest < -kPositivityTol) {
    throw PhysicalityError("X-state coefficients give a negative eigenvalue " +
                           std::to_string(lowest));
  }
  return DensityMatrix4(x_matrix(p));
}

CoherentState::CoherentState(cplx alpha, std::vector<cplx> amplitudes, double tail)
    : alpha_(alpha), amplitudes_(std::move(amplitudes)), tail_(tail) {
  if (amplitudes_.empty()) throw DimensionMismatchError("coherent state needs at least one level");
}

CoherentState CoherentState::padded(std::size_t extra) const {
  std::vector<cplx> amps(amplitudes_);
  amps.resize(amps.size() + extra, cplx(0.0, 0.0));
  return CoherentState(alpha_, std::move(amps), tail_);
}

CoherentState coherent_amplitudes(cplx alpha, double tail_tol, std::size_t cap) {
  if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be positive");
  const double mean = std::norm(alpha);
  if (!std::isfinite(mean) || mean > static_cast<double>(cap)) {
    throw TruncationError("coherent amplitude |alpha|^2 = " + std::to_string(mean) +
                          " needs more than " + std::to_string(cap) + " Fock levels");
  }

  // Past n > 2|alpha|^2 successive weights shrink by at least half, so stopping
  // once a weight drops below tail_tol * 1e-6 leaves a negligible remainder.
  const std::size_t hard_stop = 4 * cap + 64;
  std::vector<cplx> amps{cplx(std::exp(-mean / 2.0), 0.0)};
  while (amps.size() < hard_stop) {
    const std::size_t n = amps.size() - 1;
    const double w = std::norm(amps.back());
    if (static_cast<double>(n) > 2.0 * mean + 1.0 && w < tail_tol * 1e-6) break;
    amps.push_back(amps.back() * alpha / std::sqrt(static_cast<double>(n + 1)));
  }

  // suffix[n] = sum of weights strictly above level n
  std::vector<double> suffix(amps.size(), 0.0);
  for (std::size_t n = amps.size() - 1; n-- > 0;) suffix[n] = suffix[n + 1] + std::norm(amps[n + 1]);

  std::size_t n_max = 0;
  while (n_max + 1 < amps.size() && suffix[n_max] > tail_tol) ++n_max;
  if (n_max > cap) {
    throw TruncationError("coherent state truncation needs n_max = " + std::to_string(n_max) +
                          " > cap " + std::to_string(cap));
  }
  const double tail = suffix[n_max];
  amps.resize(n_max + 1);
  return CoherentState(alpha, std::move(amps), tail);
}

}  // namespace qcorr
