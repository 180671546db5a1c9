#include "qcorr/dynamics.hpp"

#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {

bool ModelParams::dispersive(double ratio) const {
  const double limit = ratio * std::abs(g);
  return std::abs(delta1()) >= limit && std::abs(delta2()) >= limit;
}

ModelParams ModelParams::identical(double g, double delta, double omega) {
  ModelParams mp;
  mp.g = g;
  mp.omega1 = omega;
  mp.omega2 = omega;
  mp.omega_r = omega - delta;
  return mp;
}

double chi(double g, double delta1, double delta2) {
  if (delta1 == 0.0 || delta2 == 0.0) throw ZeroDetuningError();
  return g * g * (delta1 + delta2) / (2.0 * delta1 * delta2);
}

double omega_eff(double omega, double g, double delta, double n) {
  if (delta == 0.0) throw ZeroDetuningError();
  if (n < 0.0) throw DomainError("photon number must be nonnegative");
  return 0.5 * (omega + 2.0 * (g * g / delta) * (n + 0.5));
}

Eigensystem eigensystem(double Omega1, double Omega2, double chi_) {
  Eigensystem es;
  es.Omega1 = Omega1;
  es.Omega2 = Omega2;
  es.chi = chi_;
  const double e1 = Omega1 + Omega2;
  const double e2 = std::hypot(Omega1 - Omega2, chi_);
  if (e2 == 0.0) throw DegenerateError("mixing angle undefined: Omega1 == Omega2 and chi == 0");
  es.energies = {e1, e2, -e2, -e1};
  // atan2 keeps both sin(theta) = -chi/E2 and cos(theta) = (Omega1-Omega2)/E2
  es.theta = std::atan2(-chi_, Omega1 - Omega2);
  return es;
}

Eigen::Matrix4cd effective_block(double Omega1, double Omega2, double chi_) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(kSS, kSS) = Omega1 + Omega2;
  h(kST, kST) = Omega1 - Omega2;
  h(kTS, kTS) = -Omega1 + Omega2;
  h(kTT, kTT) = -Omega1 - Omega2;
  h(kST, kTS) = h(kTS, kST) = -chi_;
  return h;
}

double Propagator4::unitarity_defect() const {
  return (u_ * u_.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

namespace {

cplx phase(double energy, double t) { return std::polar(1.0, -energy * t); }

void require_nonnegative_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
}

}  // namespace

Propagator4 propagator(const Eigensystem& es, double t) {
  require_nonnegative_time(t);
  const cplx e1 = phase(es.energies[0], t);
  const cplx e2 = phase(es.energies[1], t);
  const cplx e3 = phase(es.energies[2], t);
  const cplx e4 = phase(es.energies[3], t);
  const double s = std::sin(es.theta / 2.0);
  const double c = std::cos(es.theta / 2.0);
  const cplx kappa = (e2 - e3) * s * c;
  const cplx eta = (e2 - e3) * s * s;

  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(kSS, kSS) = e1;
  u(kST, kST) = e2 - eta;
  u(kST, kTS) = kappa;
  u(kTS, kST) = kappa;
  u(kTS, kTS) = e3 + eta;
  u(kTT, kTT) = e4;
  return Propagator4(u);
}

Propagator4 propagator(double Omega1, double Omega2, double chi_, double t) {
  if (std::hypot(Omega1 - Omega2, chi_) == 0.0) {
    require_nonnegative_time(t);
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(kSS, kSS) = phase(Omega1 + Omega2, t);
    u(kTT, kTT) = phase(-(Omega1 + Omega2), t);
    return Propagator4(u);
  }
  return propagator(eigensystem(Omega1, Omega2, chi_), t);
}

cplx closed_form_c0(const XStateParams& p, cplx alpha, const ModelParams& mp, double t) {
  if (!mp.identical_qubits()) throw NonIdenticalQubitsError();
  const double delta = mp.delta1();
  if (delta == 0.0) throw ZeroDetuningError();
  require_nonnegative_time(t);

  const double g2 = mp.g * mp.g;
  const double n_bar = std::norm(alpha);
  const double x = 4.0 * g2 * t / delta;
  // -|alpha|^2 (1 - e^{ix}) split into modulus and phase parts
  const double log_mod = -n_bar * (1.0 - std::cos(x));
  const double arg = 2.0 * (mp.omega1 + g2 / delta) * t + n_bar * std::sin(x);
  return (p.c1 - p.c2) * std::polar(std::exp(log_mod), arg);
}

DensityMatrix4 evolve_x_closed(const XStateParams& p, cplx alpha, const ModelParams& mp, double t) {
  const cplx c0 = closed_form_c0(p, alpha, mp, t);
  DensityMatrix4::Matrix m = make_x_state(p).matrix();
  m(kSS, kTT) = c0 / 4.0;
  m(kTT, kSS) = std::conj(c0) / 4.0;
  return DensityMatrix4(m);
}

}  // namespace qcorr
