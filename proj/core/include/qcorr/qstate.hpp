#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using cplx = std::complex<double>;

/// Basis indices shared by every module: |S>1|S>2, |S>1|T>2, |T>1|S>2, |T>1|T>2.
/// S is the excited (sigma_z = +1) level of each qubit.
enum BasisIndex : int { kSS = 0, kST = 1, kTS = 2, kTT = 3 };

/// Number of excitations (S levels) in a two-qubit basis state.
constexpr int excitations(int q) { return 2 - (q >> 1) - (q & 1); }

/// Correlation coefficients of the maximally-mixed-marginal family
/// (I + sum_i c_i sigma_i (x) sigma_i) / 4.
struct XStateParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  /// Closed-form spectrum: (1-c3 +- |c1+c2|)/4, (1+c3 +- |c1-c2|)/4.
  std::array<double, 4> eigenvalues() const;
  /// True when |c_i| <= 1 and every eigenvalue is >= -tol.
  bool physical(double tol = 1e-10) const;

  friend bool operator==(const XStateParams&, const XStateParams&) = default;
};

/// 4x4 two-qubit density matrix. Construction does not validate; use
/// validate_density() or DensityMatrix4::checked().
class DensityMatrix4 {
 public:
  using Matrix = Eigen::Matrix4cd;

  DensityMatrix4() : m_(Matrix::Identity() / 4.0) {}
  explicit DensityMatrix4(const Matrix& m) : m_(m) {}

  /// Throws PhysicalityError unless the matrix passes validate_density().
  static DensityMatrix4 checked(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  /// Reduced state of qubit A (first factor).
  Eigen::Matrix2cd reduced_a() const;
  /// Reduced state of qubit B (second factor).
  Eigen::Matrix2cd reduced_b() const;

  /// Largest modulus among the eight entries outside the diagonal and anti-diagonal.
  double non_x_magnitude() const;

 private:
  Matrix m_;
};

struct ValidationReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool passed = false;
};

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

ValidationReport validate_density(const DensityMatrix4& rho);

/// The X-state matrix for the given coefficients, without any checks.
DensityMatrix4 x_state_matrix(const XStateParams& p);

/// The X-state matrix for the given coefficients. Throws PhysicalityError if
/// any |c_i| > 1 or the matrix has an eigenvalue below -1e-10.
DensityMatrix4 make_x_state(const XStateParams& p);

/// Truncated coherent-state amplitudes a_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!).
class CoherentState {
 public:
  CoherentState(cplx alpha, std::vector<cplx> amplitudes, double tail);

  cplx alpha() const { return alpha_; }
  std::size_t n_max() const { return amplitudes_.size() - 1; }
  std::size_t fock_dim() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  /// Probability weight outside the retained levels.
  double tail() const { return tail_; }

  /// Same state on a Fock space extended by `extra` empty levels.
  CoherentState padded(std::size_t extra) const;

 private:
  cplx alpha_;
  std::vector<cplx> amplitudes_;
  double tail_;
};

inline constexpr std::size_t kDefaultFockCap = 512;

/// Smallest truncation whose discarded weight is <= tail_tol. Throws DomainError
/// for tail_tol <= 0 and TruncationError when n_max would exceed `cap`.
CoherentState coherent_amplitudes(cplx alpha, double tail_tol = 1e-12,
                                  std::size_t cap = kDefaultFockCap);

}  // namespace qcorr
