#pragma once

#include <random>

#include <qcorr/dynamics.hpp>
#include <qcorr/qstate.hpp>

namespace qcorr::test_support {

inline XStateParams random_physical_x(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    XStateParams p{u(rng), u(rng), u(rng)};
    if (p.physical(0.0)) return p;
  }
}

struct EvolvedX {
  XStateParams p;
  cplx alpha;
  ModelParams mp;
  double t;
  DensityMatrix4 rho;
};

/// Closed-form state for random coefficients, amplitude, coupling, detuning and time.
inline EvolvedX random_evolved_x(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const XStateParams p = random_physical_x(rng);
  const cplx alpha = std::polar(3.0 * u(rng), 6.283185307179586 * u(rng));
  const double g = 0.5 + 1.5 * u(rng);
  const double delta = g * (5.0 + 35.0 * u(rng));
  const ModelParams mp = ModelParams::identical(g, delta, 100.0);
  const double t = 3.141592653589793 * delta / (g * g) * u(rng);
  return {p, alpha, mp, t, evolve_x_closed(p, alpha, mp, t)};
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qcorr::test_support
