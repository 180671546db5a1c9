#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcorr/dynamics.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

// +1 for S, -1 for T on qubit j (0 or 1).
int sigma_z(int q, int j) { return ((q >> (1 - j)) & 1) ? -1 : 1; }
int excited(int q, int j) { return sigma_z(q, j) > 0 ? 1 : 0; }

Eigen::Index global_index(int q, std::size_t n, std::size_t fock_dim) {
  return static_cast<Eigen::Index>(static_cast<std::size_t>(q) * fock_dim + n);
}

}  // namespace

Eigen::MatrixXcd BlockHamiltonian::dense() const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& s : sectors) {
    for (std::size_t a = 0; a < s.indices.size(); ++a)
      for (std::size_t b = 0; b < s.indices.size(); ++b)
        h(s.indices[a], s.indices[b]) += s.h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  for (int q = 0; q < 4; ++q) {
    for (std::size_t n = 0; n < fock_dim; ++n) {
      double charge = excitations(q);
      if (frame_counts_photons) charge += static_cast<double>(n);
      const auto i = global_index(q, n, fock_dim);
      h(i, i) += frame_frequency * charge + offset;
    }
  }
  return h;
}

BlockHamiltonian effective_hamiltonian(const ModelParams& mp, std::size_t fock_dim) {
  const double d1 = mp.delta1();
  const double d2 = mp.delta2();
  const double x = chi(mp.g, d1, d2);
  const double mean_omega = 0.5 * (mp.omega1 + mp.omega2);
  const double g2 = mp.g * mp.g;

  BlockHamiltonian bh;
  bh.fock_dim = fock_dim;
  bh.frame_frequency = mean_omega;
  bh.frame_counts_photons = false;
  bh.offset = -mean_omega;
  bh.sectors.reserve(fock_dim);
  for (std::size_t n = 0; n < fock_dim; ++n) {
    const double nn = static_cast<double>(n) + 0.5;
    Sector s;
    s.h = Eigen::MatrixXcd::Zero(4, 4);
    for (int q = 0; q < 4; ++q) {
      s.indices.push_back(global_index(q, n, fock_dim));
      // omega_j sigma_z/2 = omega_j e_j - omega_j/2; the mean frequency times the
      // excitation count lives in the frame term, the constant in the offset.
      const double bare = (mp.omega1 - mean_omega) * excited(q, 0) + (mp.omega2 - mean_omega) * excited(q, 1);
      const double shift = (g2 / d1) * nn * sigma_z(q, 0) + (g2 / d2) * nn * sigma_z(q, 1);
      s.h(q, q) = bare + shift;
    }
    s.h(kST, kTS) = s.h(kTS, kST) = -x;
    bh.sectors.push_back(std::move(s));
  }
  return bh;
}

BlockHamiltonian jaynes_cummings_hamiltonian(const ModelParams& mp, std::size_t fock_dim) {
  const std::array<double, 2> coupling{mp.g, -mp.g};
  const std::array<double, 2> detuning{mp.delta1(), mp.delta2()};

  BlockHamiltonian bh;
  bh.fock_dim = fock_dim;
  bh.frame_frequency = mp.omega_r;
  bh.frame_counts_photons = true;
  bh.offset = -0.5 * (mp.omega1 + mp.omega2);

  // Sector K holds (q, n) with n + excitations(q) = K.
  for (std::size_t k = 0; k < fock_dim + 2; ++k) {
    std::vector<int> qs;
    std::vector<std::size_t> ns;
    for (int q = 0; q < 4; ++q) {
      const int exc = excitations(q);
      if (static_cast<int>(k) < exc) continue;
      const std::size_t n = k - static_cast<std::size_t>(exc);
      if (n >= fock_dim) continue;
      qs.push_back(q);
      ns.push_back(n);
    }
    if (qs.empty()) continue;

    Sector s;
    const auto m = static_cast<Eigen::Index>(qs.size());
    s.h = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      s.indices.push_back(global_index(qs[a], ns[a], fock_dim));
      s.h(a, a) = detuning[0] * excited(qs[a], 0) + detuning[1] * excited(qs[a], 1);
    }
    // a sigma_+^j : (T on j, n + 1) -> sqrt(n + 1) (S on j, n); a holds S, b holds T
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        for (int j = 0; j < 2; ++j) {
          if (excited(qs[a], j) != 1 || excited(qs[b], j) != 0) continue;
          const int flipped = qs[a] ^ (1 << (1 - j));
          if (flipped != qs[b] || ns[b] != ns[a] + 1) continue;
          const double amp = coupling[j] * std::sqrt(static_cast<double>(ns[b]));
          s.h(b, a) += amp;
          s.h(a, b) += amp;
        }
      }
    }
    bh.sectors.push_back(std::move(s));
  }
  return bh;
}

BlockHamiltonian build_hamiltonian(FockEngine engine, const ModelParams& mp, std::size_t fock_dim) {
  return engine == FockEngine::effective ? effective_hamiltonian(mp, fock_dim)
                                         : jaynes_cummings_hamiltonian(mp, fock_dim);
}

FockEvolution::FockEvolution(const DensityMatrix4& rho0, const CoherentState& cs,
                             const BlockHamiltonian& h)
    : fock_dim_(h.fock_dim), frame_frequency_(h.frame_frequency) {
  if (cs.fock_dim() != h.fock_dim) {
    throw DimensionMismatchError("coherent state has " + std::to_string(cs.fock_dim()) +
                                 " levels, Hamiltonian expects " + std::to_string(h.fock_dim));
  }
  const auto report = validate_density(rho0);
  if (!report.passed) throw PhysicalityError("initial two-qubit state is not a valid density matrix");

  sectors_.reserve(h.sectors.size());
  for (const auto& s : h.sectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.h);
    if (es.info() != Eigen::Success) throw NumericalError("sector eigensolver failed");
    sectors_.push_back({s.indices, es.eigenvectors(), es.eigenvalues()});
  }

  const Eigen::Matrix4cd herm = (rho0.matrix() + rho0.matrix().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> mix(herm);
  const auto amps = cs.amplitudes();
  for (int k = 0; k < 4; ++k) {
    const double w = mix.eigenvalues()(k);
    if (w <= 0.0) continue;
    const Eigen::Vector4cd psi = mix.eigenvectors().col(k);
    Component comp{w, {}};
    comp.coords.reserve(sectors_.size());
    for (const auto& s : sectors_) {
      Eigen::VectorXcd local(static_cast<Eigen::Index>(s.indices.size()));
      for (std::size_t a = 0; a < s.indices.size(); ++a) {
        const auto idx = static_cast<std::size_t>(s.indices[a]);
        local(static_cast<Eigen::Index>(a)) = psi(static_cast<Eigen::Index>(idx / fock_dim_)) * amps[idx % fock_dim_];
      }
      comp.coords.push_back(s.vectors.adjoint() * local);
    }
    components_.push_back(std::move(comp));
  }
}

DensityMatrix4 FockEvolution::state_at(double t) const {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  const auto n = static_cast<Eigen::Index>(fock_dim_);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  Eigen::MatrixXcd psi(4, n);

  for (const auto& comp : components_) {
    psi.setZero();
    for (std::size_t si = 0; si < sectors_.size(); ++si) {
      const auto& s = sectors_[si];
      // U^dag = exp(+i H t)
      const Eigen::VectorXcd phased =
          comp.coords[si].cwiseProduct((s.energies * t).unaryExpr([](double a) { return std::polar(1.0, a); }));
      const Eigen::VectorXcd local = s.vectors * phased;
      for (std::size_t a = 0; a < s.indices.size(); ++a) {
        const auto idx = s.indices[a];
        psi(idx / n, idx % n) = local(static_cast<Eigen::Index>(a));
      }
    }
    rho.noalias() += comp.weight * (psi * psi.adjoint());
  }

  // Reinstate the frame term: amplitudes carry exp(+i nu exc t).
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho(i, j) *= std::polar(1.0, frame_frequency_ * (excitations(i) - excitations(j)) * t);
  return DensityMatrix4(rho);
}

DensityMatrix4 evolve_full(const DensityMatrix4& rho0, const CoherentState& cs, const ModelParams& mp,
                           double t, FockEngine engine) {
  if (cs.tail() > 1e-12) {
    throw TruncationError("coherent-state truncation tail " + std::to_string(cs.tail()) + " exceeds 1e-12");
  }
  return FockEvolution(rho0, cs, build_hamiltonian(engine, mp, cs.fock_dim())).state_at(t);
}

DensityMatrix4 partial_trace_resonator(const Eigen::MatrixXcd& big) {
  if (big.rows() != big.cols() || big.rows() == 0 || big.rows() % 4 != 0) {
    throw DimensionMismatchError("expected a square matrix of dimension 4(n_max+1), got " +
                                 std::to_string(big.rows()) + "x" + std::to_string(big.cols()));
  }
  const Eigen::Index n = big.rows() / 4;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (Eigen::Index k = 0; k < n; ++k) rho(i, j) += big(i * n + k, j * n + k);
  return DensityMatrix4(rho);
}

}  // namespace qcorr
