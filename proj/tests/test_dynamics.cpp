#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <qcorr/dynamics.hpp>
#include <qcorr/errors.hpp>

#include "support.hpp"

using namespace qcorr;
using std::numbers::pi;

TEST(Chi, Values) {
  EXPECT_NEAR(chi(1.0, 10.0, 10.0), 0.1, 1e-16);
  EXPECT_EQ(chi(0.0, 10.0, 10.0), 0.0);
  EXPECT_EQ(chi(1.0, 10.0, -10.0), 0.0);
  EXPECT_THROW(chi(1.0, 0.0, 10.0), ZeroDetuningError);
}

TEST(OmegaEff, Values) {
  EXPECT_EQ(omega_eff(2.0, 0.0, 10.0, 3.0), 1.0);
  EXPECT_NEAR(omega_eff(0.0, 1.0, 10.0, 0.0), 0.05, 1e-16);
  EXPECT_NEAR(omega_eff(0.0, 1.0, 10.0, 4.0), 0.45, 1e-16);
  EXPECT_THROW(omega_eff(1.0, 1.0, 0.0, 0.0), ZeroDetuningError);
  EXPECT_THROW(omega_eff(1.0, 1.0, 10.0, -1.0), DomainError);
}

TEST(Eigensystem, IdenticalSplittings) {
  const auto es = eigensystem(0.7, 0.7, 0.2);
  EXPECT_NEAR(std::cos(es.theta), 0.0, 1e-15);
  EXPECT_NEAR(std::sin(es.theta), -1.0, 1e-15);
}

TEST(Eigensystem, Uncoupled) {
  const auto es = eigensystem(2.0, 1.0, 0.0);
  EXPECT_EQ(es.theta, 0.0);
  const auto u = propagator(es, 0.3).matrix();
  EXPECT_EQ(u(kST, kTS), cplx(0.0, 0.0));
}

TEST(Eigensystem, ThreeFourFive) {
  const auto es = eigensystem(4.0, 1.0, 4.0);
  EXPECT_NEAR(es.energies[1], 5.0, 1e-15);
  EXPECT_NEAR(es.energies[2], -5.0, 1e-15);
  EXPECT_NEAR(es.energies[0], 5.0, 1e-15);
  EXPECT_NEAR(es.energies[3], -5.0, 1e-15);
  EXPECT_NEAR(std::sin(es.theta), -0.8, 1e-15);
  EXPECT_NEAR(std::cos(es.theta), 0.6, 1e-15);
}

TEST(Eigensystem, Degenerate) { EXPECT_THROW(eigensystem(1.0, 1.0, 0.0), DegenerateError); }

TEST(Eigensystem, EnergiesMatchNumericSpectrum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double o1 = u(rng), o2 = u(rng), x = u(rng);
    const auto es = eigensystem(o1, o2, x);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> num(effective_block(o1, o2, x), Eigen::EigenvaluesOnly);
    std::array<double, 4> ours = es.energies;
    std::sort(ours.begin(), ours.end());
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(ours[k], num.eigenvalues()(k), 1e-13);
  }
}

TEST(Propagator, IdentityAtZero) {
  const auto u = propagator(eigensystem(0.3, -0.2, 0.5), 0.0).matrix();
  EXPECT_LT(test_support::max_abs(u - Eigen::Matrix4cd::Identity()), 1e-15);
}

TEST(Propagator, MatchesMatrixExponential) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> ut(0.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double o1 = u(rng), o2 = u(rng), x = u(rng), t = ut(rng);
    const Eigen::Matrix4cd h = effective_block(o1, o2, x);
    const Eigen::Matrix4cd ref = (h * cplx(0.0, -t)).exp();
    EXPECT_LT(test_support::max_abs(propagator(eigensystem(o1, o2, x), t).matrix() - ref), 1e-12);
  }
}

TEST(Propagator, UnitarityAndComposition) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> ut(0.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const auto es = eigensystem(u(rng), u(rng), u(rng));
    const double t1 = ut(rng), t2 = ut(rng);
    const auto p = propagator(es, t1);
    EXPECT_LE(p.unitarity_defect(), 1e-12);
    const Eigen::Matrix4cd uu = p.matrix().adjoint() * p.matrix() - Eigen::Matrix4cd::Identity();
    EXPECT_LE(test_support::max_abs(uu), 1e-12);
    const Eigen::Matrix4cd composed = propagator(es, t1).matrix() * propagator(es, t2).matrix();
    EXPECT_LE(test_support::max_abs(propagator(es, t1 + t2).matrix() - composed), 1e-12);
  }
}

TEST(Propagator, HalfPeriodSwap) {
  const double x = 0.4;
  const auto u = propagator(0.0, 0.0, x, pi / 2.0 / x).matrix();
  EXPECT_NEAR(std::abs(u(kST, kST)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(kTS, kTS)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(kST, kTS) - cplx(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(kTS, kST) - cplx(0.0, 1.0)), 0.0, 1e-15);
}

TEST(Propagator, DegenerateCentralBlockIsIdentity) {
  const auto u = propagator(0.5, 0.5, 0.0, 1.3).matrix();
  EXPECT_EQ(u(kST, kST), cplx(1.0, 0.0));
  EXPECT_EQ(u(kTS, kTS), cplx(1.0, 0.0));
  EXPECT_EQ(u(kST, kTS), cplx(0.0, 0.0));
  EXPECT_LE(std::abs(u(kSS, kSS) - std::polar(1.0, -1.3)), 1e-15);
}

TEST(Propagator, NegativeTime) {
  EXPECT_THROW(propagator(eigensystem(1.0, 0.0, 1.0), -1.0), DomainError);
}

namespace {
const XStateParams kWorked{1.0, -0.3, 0.3};
const ModelParams kFig = ModelParams::identical(1.0, 10.0, 100.0);
}  // namespace

TEST(ClosedForm, InitialStateExact) {
  EXPECT_EQ(evolve_x_closed(kWorked, 2.0, kFig, 0.0).matrix(), make_x_state(kWorked).matrix());
}

TEST(ClosedForm, CollapseDepth) {
  // 4 g^2 t / delta = pi
  const double t = pi * 10.0 / 4.0;
  const cplx c0 = closed_form_c0(kWorked, 2.0, kFig, t);
  EXPECT_NEAR(std::abs(c0), 1.3 * std::exp(-8.0), 1e-15);
}

TEST(ClosedForm, VacuumKeepsModulus) {
  for (double t : {0.0, 1.0, 7.7, 31.0}) {
    EXPECT_NEAR(std::abs(closed_form_c0(kWorked, 0.0, kFig, t)), 1.3, 1e-14);
  }
}

TEST(ClosedForm, CentralBlockAndPopulationsStatic) {
  const auto rho0 = make_x_state(kWorked);
  for (double t : {0.3, 4.0, 12.5}) {
    const auto rho = evolve_x_closed(kWorked, 2.0, kFig, t);
    EXPECT_EQ(rho(kST, kTS), cplx(0.175, 0.0));
    EXPECT_EQ(rho(kTS, kST), cplx(0.175, 0.0));
    for (int i = 0; i < 4; ++i) EXPECT_EQ(rho(i, i), rho0(i, i));
  }
}

TEST(ClosedForm, ModulusPeriodic) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double g = 0.5 + u(rng), delta = g * (5.0 + 30.0 * u(rng));
    const ModelParams mp = ModelParams::identical(g, delta, 50.0);
    const double period = pi * delta / (2.0 * g * g);
    const double t = 3.0 * period * u(rng);
    EXPECT_NEAR(std::abs(closed_form_c0(kWorked, 1.5, mp, t + period)), std::abs(closed_form_c0(kWorked, 1.5, mp, t)),
                1e-12);
  }
}

TEST(ClosedForm, CornerPhaseDependsOnAlphaPhaseOnlyThroughModulus) {
  const double t = 3.3;
  const auto a = closed_form_c0(kWorked, 2.0, kFig, t);
  const auto b = closed_form_c0(kWorked, std::polar(2.0, 1.1), kFig, t);
  EXPECT_NEAR(std::abs(a - b), 0.0, 1e-15);
}

TEST(ClosedForm, Errors) {
  ModelParams mp = kFig;
  mp.omega2 = 101.0;
  EXPECT_THROW(evolve_x_closed(kWorked, 2.0, mp, 1.0), NonIdenticalQubitsError);
  EXPECT_THROW(evolve_x_closed(kWorked, 2.0, ModelParams::identical(1.0, 0.0, 100.0), 1.0), ZeroDetuningError);
  EXPECT_THROW(evolve_x_closed(kWorked, 2.0, kFig, -0.1), DomainError);
}

TEST(ModelParams, Flags) {
  EXPECT_TRUE(kFig.dispersive());
  EXPECT_TRUE(kFig.identical_qubits());
  EXPECT_NEAR(kFig.delta1(), 10.0, 1e-15);
  EXPECT_FALSE(ModelParams::identical(1.0, 2.0, 100.0).dispersive());
}
