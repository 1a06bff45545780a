#pragma once

// Damped Newton solution of the three scalar conditions
//   gamma11 = 0,  psi1 = 0,  lambda1 lambda2 = 1
// over (tau_L, tau_R, delta_L) of the 3D normal form, plus the full
// hypothesis verifier: the sufficient conditions for infinitely many
// coexisting attractors, the necessary-direction conditions, the k-sweep of
// X^k Y-cycles, and the asymptotic convergence checks.

#include <string>
#include <vector>

#include "pwlhc/cycle.hpp"
#include "pwlhc/homoclinic.hpp"
#include "pwlhc/map.hpp"
#include "pwlhc/spectral.hpp"
#include "pwlhc/word.hpp"

namespace pwlhc {

struct Residual3 {
  double r1 = 0;  // gamma11
  double r2 = 0;  // psi1
  double r3 = 0;  // lambda1 * lambda2 - 1
  double norm_inf() const;
};

// Evaluates the three conditions at p.  Throws (frame/degeneracy errors)
// when the eigenvalue structure is lost at p.
Residual3 residual(const BcnfParams& p, const Word& X, const Word& Y);

struct SolveOptions {
  double tol = 1e-12;      // on ||residual||_inf
  int max_iterations = 50;
  double fd_step_rel = 1e-7;  // central-difference step, scaled by max(1,|p|)
  int max_halvings = 8;       // damping: halve the step while ||r|| grows
  double max_condition = 1e12;  // Jacobian condition-number guard
};

enum class SolveStatus {
  Converged,
  JacobianSingular,
  MaxIterationsExceeded,
  StepRejected,  // no residual decrease after all halvings
  FrameLost,     // eigenvalue structure lost and not recovered by damping
};

const char* to_string(SolveStatus s);

struct SolveResult {
  BcnfParams params;   // last good iterate
  Residual3 residual;  // residual there
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterationsExceeded;
  std::string message;
  bool converged() const { return status == SolveStatus::Converged; }
};

// Newton iteration on (tau_L, tau_R, delta_L); sigma_L, sigma_R, delta_R and
// mu are held fixed.
SolveResult solve(const BcnfParams& p0, const Word& X, const Word& Y,
                  const SolveOptions& opts = {});

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  // Numerical margin by which the check passes (negative when it fails).
  double margin = 0;
  std::string detail;
};

struct SweepRow {
  int k = 0;
  std::string word;
  Admissibility admissibility = Admissibility::NotAdmissible;
  int failing_index = -1;
  Stability stability = Stability::UndeterminedBoundary;
  double max_multiplier_modulus = 0;
  // Row passes when the cycle is admissible, asymptotically stable, and has
  // no points on Sigma.
  bool pass = false;
};

struct AsymptoticRow {
  int k = 0;
  // |omega1-projection of the X^k Y cycle's kn-th point - a0(lambda1+1)c/(1+c)|
  double proj_error = 0;
  // ||x^{X^k Ybar}_{kn} - y0||_inf for the flipped word Ybar = Y flipped at 0
  double dist_to_y0 = 0;
  bool valid = false;  // false when the flipped-word system is degenerate
};

struct AsymptoticReport {
  std::vector<AsymptoticRow> rows;
  // Geometric decay ratios fitted by least squares on the log errors.
  double fitted_ratio_proj = 0, fitted_ratio_dist = 0;
  // Expected ratio max(1/lambda1, lambda1*beta) from the error expansion.
  double theory_ratio = 0;
  bool proj_decays = false, dist_decays = false;
  // The admissibility band 1 < (lambda1+1)c/(1+c) < lambda1.
  double band_value = 0;
  bool band_ok = false;
};

AsymptoticReport asymptotic_checks(const PwlMap& f, const Word& X,
                                   const Word& Y, const SpectralFrame& frame,
                                   const Vector& x0, double a0,
                                   const ProjectedQuantities& q,
                                   const Vector& y0, int k_lo, int k_hi);

struct VerificationReport {
  BcnfParams params;
  std::string X, Y;
  int alpha = -1, d = 0, i_hat = 0;

  bool frame_valid = false;
  std::string frame_error;  // set when the frame cannot be built at p
  SpectralFrame frame;
  ProjectedQuantities quantities;
  double a0 = 0;
  double psi2_residual = 0;

  // Sufficient conditions for infinitely many coexisting attractors.
  std::vector<HypothesisCheck> sufficient;
  // Conditions from the necessity direction (c not in {-1, 0}; the image of
  // the unstable direction under the 0-flipped Y word leaves the stable
  // manifold).
  std::vector<HypothesisCheck> necessary;

  SubsumedReport subsumed;
  std::vector<SweepRow> sweep;
  AsymptoticReport asymptotics;

  bool hypotheses_pass = false;
  bool sweep_pass = false;
  bool overall_pass = false;
};

// Evaluates every hypothesis, the k-sweep for k = 0..k_max, and the
// asymptotic checks.  Never throws for check failures: every failure is
// recorded in the report.
VerificationReport verify_theorems(const BcnfParams& p, const Word& X,
                                   const Word& Y, int k_max,
                                   double tol_sigma = kTolSigmaDefault);

}  // namespace pwlhc
