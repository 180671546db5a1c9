#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Physical parameters of the two-qubit + resonator model, hbar = 1.
/// Frequencies are angular; detunings are derived as delta_j = omega_j - omega_r.
struct ModelParams {
  double omega_r = 90.0;
  double omega1 = 100.0;
  double omega2 = 100.0;
  double g = 1.0;

  double delta1() const { return omega1 - omega_r; }
  double delta2() const { return omega2 - omega_r; }
  bool identical_qubits() const { return omega1 == omega2; }
  /// |delta_j| >= ratio * |g| for both qubits.
  bool dispersive(double ratio = 5.0) const;

  /// Identical qubits with splitting `omega` detuned by `delta` from the resonator.
  static ModelParams identical(double g, double delta, double omega);

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Resonator-mediated exchange g^2 (d1 + d2) / (2 d1 d2).
double chi(double g, double delta1, double delta2);

/// Photon-number dressed half-splitting (omega + 2 g^2/delta (n + 1/2)) / 2.
double omega_eff(double omega, double g, double delta, double n);

/// Spectrum and mixing angle of the 4x4 effective Hamiltonian at fixed photon number.
struct Eigensystem {
  double Omega1 = 0.0;
  double Omega2 = 0.0;
  double chi = 0.0;
  std::array<double, 4> energies{};  // E1 = -E4 = Omega1 + Omega2, E2 = -E3 >= 0
  double theta = 0.0;               // sin(theta) = -chi/E2, cos(theta) = (Omega1-Omega2)/E2
};

/// Throws DegenerateError when E2 = 0 (theta undefined).
Eigensystem eigensystem(double Omega1, double Omega2, double chi);

/// The 4x4 effective Hamiltonian in the (SS, ST, TS, TT) basis.
Eigen::Matrix4cd effective_block(double Omega1, double Omega2, double chi);

class Propagator4 {
 public:
  explicit Propagator4(const Eigen::Matrix4cd& u) : u_(u) {}
  const Eigen::Matrix4cd& matrix() const { return u_; }
  /// max |U U^dag - 1| entrywise
  double unitarity_defect() const;

 private:
  Eigen::Matrix4cd u_;
};

/// exp(-i H t) assembled from the dressed eigenstates. Throws DomainError for t < 0.
Propagator4 propagator(const Eigensystem& es, double t);

/// Same as above; when E2 = 0 the central block is the identity.
Propagator4 propagator(double Omega1, double Omega2, double chi, double t);

/// Corner coherence of the traced closed-form state,
/// (c1 - c2) e^{2i(omega + g^2/delta) t} exp[-|alpha|^2 (1 - e^{4 i g^2 t/delta})].
cplx closed_form_c0(const XStateParams& p, cplx alpha, const ModelParams& mp, double t);

/// Closed-form traced state for identical qubits: only rho_14 = c0/4 evolves.
/// Throws NonIdenticalQubitsError, ZeroDetuningError.
DensityMatrix4 evolve_x_closed(const XStateParams& p, cplx alpha, const ModelParams& mp, double t);

// ---------------------------------------------------------------------------
// Qubits (x) Fock-space engines.
//
// Global basis index = q * fock_dim + n with q in (SS, ST, TS, TT).
//
// Both Hamiltonians conserve the qubit excitation count (effective engine) or the
// total excitation count (Jaynes-Cummings engine), so they split into small
// sectors. The sector matrices omit a term frame_frequency * excitations(q) (plus
// frame_frequency * n for JC); evolution puts it back as an exact phase on the
// reduced qubit state, where the photon part drops out of the trace.

enum class FockEngine { effective, jaynes_cummings };

struct Sector {
  std::vector<Eigen::Index> indices;
  Eigen::MatrixXcd h;
};

struct BlockHamiltonian {
  std::size_t fock_dim = 0;
  std::vector<Sector> sectors;
  double frame_frequency = 0.0;
  bool frame_counts_photons = false;
  double offset = 0.0;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(4 * fock_dim); }
  /// Full Hamiltonian matrix, frame term and offset included.
  Eigen::MatrixXcd dense() const;
};

/// Dispersive Hamiltonian in the frame of omega_r a^dag a: sum_j Omega_j(N) sigma_z^j
/// - chi (sigma_+^1 sigma_-^2 + h.c.). Throws ZeroDetuningError.
BlockHamiltonian effective_hamiltonian(const ModelParams& mp, std::size_t fock_dim);

/// omega_r a^dag a + sum_j omega_j/2 sigma_z^j + (-1)^{j-1} g (a sigma_+^j + sigma_-^j a^dag).
BlockHamiltonian jaynes_cummings_hamiltonian(const ModelParams& mp, std::size_t fock_dim);

BlockHamiltonian build_hamiltonian(FockEngine engine, const ModelParams& mp, std::size_t fock_dim);

/// Prepared evolution of rho0 (x) |alpha><alpha|. Sector eigen-decompositions and
/// initial-state projections are computed once; state_at() is cheap. States are
/// propagated as U^dag rho U with U = exp(-i H t), the ordering under which the
/// closed-form corner phase is stated; correlation measures do not depend on it.
class FockEvolution {
 public:
  FockEvolution(const DensityMatrix4& rho0, const CoherentState& cs, const BlockHamiltonian& h);

  /// Reduced two-qubit state at time t >= 0.
  DensityMatrix4 state_at(double t) const;

  std::size_t fock_dim() const { return fock_dim_; }

 private:
  struct SectorBasis {
    std::vector<Eigen::Index> indices;
    Eigen::MatrixXcd vectors;
    Eigen::VectorXd energies;
  };
  struct Component {
    double weight;
    std::vector<Eigen::VectorXcd> coords;  // per sector, in the eigenbasis
  };

  std::size_t fock_dim_;
  double frame_frequency_;
  std::vector<SectorBasis> sectors_;
  std::vector<Component> components_;
};

/// One-shot evolution; throws TruncationError if the coherent tail exceeds 1e-12.
DensityMatrix4 evolve_full(const DensityMatrix4& rho0, const CoherentState& cs,
                           const ModelParams& mp, double t, FockEngine engine);

/// rho_ij = sum_n big_{(i,n),(j,n)}. Throws DimensionMismatchError unless the
/// dimension is a positive multiple of 4.
DensityMatrix4 partial_trace_resonator(const Eigen::MatrixXcd& big);

}  // namespace qcorr
