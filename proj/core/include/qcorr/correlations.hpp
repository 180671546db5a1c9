#pragma once

#include <array>
#include <span>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Correlation measures of one two-qubit state (entropies in bits).
struct CorrelationSample {
  double t = 0.0;
  double concurrence = 0.0;
  double discord = 0.0;
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double abs_c0 = 0.0;
  double gamma = 0.0;
};

/// Projective measurement basis cos(varphi)|0> + e^{i phi} sin(varphi)|1> and its
/// orthogonal partner, varphi in [0, pi/2], phi in [0, 2 pi).
struct MeasurementAngles {
  double varphi = 0.0;
  double phi = 0.0;
};

enum class MeasuredQubit { a, b };

inline constexpr double kXStructureTol = 1e-12;

/// Non-X entries below kXStructureTol.
bool is_x_state(const DensityMatrix4& rho);
/// X structure and both marginals equal to identity/2 (to 1e-10).
bool has_maximally_mixed_marginals(const DensityMatrix4& rho);

/// Coefficients of an X state with maximally mixed marginals.
struct XCoefficients {
  double c3 = 0.0;
  double abs_c12 = 0.0;  // |c1 + c2| = 4 |rho_23|
  double abs_c0 = 0.0;   // 4 |rho_14|
  double c4() const { return 0.5 * (abs_c12 + abs_c0); }
};
/// Throws NotXStateError unless has_maximally_mixed_marginals(rho).
XCoefficients x_coefficients(const DensityMatrix4& rho);

/// 2 max{0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)}.
double concurrence_x(const DensityMatrix4& rho);

/// Wootters concurrence, computed from the singular values of sqrt(rho) sqrt(rho~).
double concurrence_general(const DensityMatrix4& rho);

/// Spectrum of an X state: inner block (+, -), then outer block (+, -).
std::array<double, 4> x_eigenvalues(const DensityMatrix4& rho);

/// -sum p log2 p with 0 log 0 = 0; entries within -1e-10 of zero are clipped,
/// anything more negative raises PhysicalityError.
double shannon_entropy(std::span<const double> probabilities);

double von_neumann_entropy(const DensityMatrix4& rho);

/// 2 + sum_i lambda_i log2 lambda_i. Requires maximally mixed marginals.
double mutual_information_x(const DensityMatrix4& rho);

/// S(rho_A) + S(rho_B) - S(rho) for any state.
double mutual_information(const DensityMatrix4& rho);

/// f(Gamma) = binary entropy of (1 + Gamma)/2. DomainError outside [0, 1 + 1e-12].
double binary_entropy_f(double gamma);

struct ClassicalCorrelation {
  double value = 0.0;
  double gamma = 0.0;  // max(|c3|, c4)
};

/// Closed-form maximum over projective measurements, 1 - f(max(|c3|, c4)).
ClassicalCorrelation classical_correlation_x(const DensityMatrix4& rho);

/// S(rho_X) - sum_k p_k S(rho_X^(k)) for one measurement on the other qubit,
/// evaluated directly from the projected states.
double classical_correlation_at(const DensityMatrix4& rho, MeasurementAngles angles,
                                MeasuredQubit measured = MeasuredQubit::b);

/// Probabilities of the two outcomes for a measurement.
std::array<double, 2> outcome_probabilities(const DensityMatrix4& rho, MeasurementAngles angles,
                                            MeasuredQubit measured = MeasuredQubit::b);

/// Gamma(varphi, phi) of the X-state conditional spectra (1 +- Gamma)/2.
double conditional_gamma_x(const DensityMatrix4& rho, MeasurementAngles angles);

struct MeasuredCorrelation {
  double value = 0.0;
  MeasurementAngles angles;
};

/// Grid search over (varphi, phi) followed by coordinate refinement to 1e-10 in the
/// angles. Deterministic; ties go to the lexicographically smallest angles.
/// Throws GridTooCoarse for grid_n < 8.
MeasuredCorrelation classical_correlation_bruteforce(const DensityMatrix4& rho, int grid_n,
                                                     MeasuredQubit measured = MeasuredQubit::b);

/// I - classical_correlation_x. Requires maximally mixed marginals.
double discord(const DensityMatrix4& rho);

/// Discord with gamma fixed to |c3| (valid when |c3| dominates c4).
double discord_c3_branch(const DensityMatrix4& rho);
/// Discord with gamma fixed to c4 (valid when c4 dominates |c3|).
double discord_c4_branch(const DensityMatrix4& rho);

enum class DiscordRegime { c3_branch, c4_branch, intermediate };

/// Which gamma branch holds for all times, from the initial coefficients and alpha.
DiscordRegime discord_regime(const XStateParams& p, double abs_alpha);

struct EvaluateOptions {
  int bruteforce_grid = 16;
  MeasuredQubit measured = MeasuredQubit::b;
};

/// Full set of measures. X states with maximally mixed marginals use the closed
/// forms; anything else uses Wootters, entropies and brute-force measurement.
CorrelationSample evaluate_correlations(const DensityMatrix4& rho, double t,
                                        const EvaluateOptions& opts = {});

}  // namespace qcorr
