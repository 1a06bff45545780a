#pragma once

// The continuous two-piece affine map on R^N:
//   f(x) = A_L x + b  for e1^T x <= 0,
//   f(x) = A_R x + b  for e1^T x >= 0,
// continuous across the switching manifold Sigma = {e1^T x = 0} because
// A_R - A_L is nonzero only in its first column (A_R = A_L + xi e1^T).

#include <Eigen/Dense>
#include <vector>

#include "pwlhc/errors.hpp"
#include "pwlhc/word.hpp"

namespace pwlhc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default half-width of the "on Sigma" band for orbit/cycle classification.
inline constexpr double kTolSigmaDefault = 1e-9;
// Looser band used when verifying homoclinic structure: truncated parameter
// data propagates through ~n+p iterations before the orbit returns to Sigma.
inline constexpr double kTolSigmaVerify = 1e-6;

enum class Side { StrictL, StrictR, OnSigma };

const char* to_string(Side s);

// Trichotomy on the first coordinate with a scaled tolerance band:
// OnSigma iff |e1^T x| <= tol * max(1, ||x||_inf).
Side classify_side(const Vector& x, double tol_sigma = kTolSigmaDefault);

// Coefficients of the 3D border-collision normal form (companion-style
// pieces, offset b = (mu, 0, 0)).
struct BcnfParams {
  double tau_L = 0, sigma_L = 0, delta_L = 0;
  double tau_R = 0, sigma_R = 0, delta_R = 0;
  double mu = 1.0;
};

class PwlMap {
 public:
  // Validates dimensions and that columns 2..N of A_R - A_L vanish to within
  // tol_continuity; reports the offending column otherwise.
  PwlMap(Matrix A_L, Matrix A_R, Vector b, double tol_continuity = 1e-12);

  int dim() const { return static_cast<int>(b_.size()); }
  const Matrix& AL() const { return AL_; }
  const Matrix& AR() const { return AR_; }
  const Vector& b() const { return b_; }
  const Matrix& piece(char symbol) const { return symbol == 'L' ? AL_ : AR_; }
  // xi = first column of A_R - A_L (the continuity defect direction).
  Vector xi() const { return AR_.col(0) - AL_.col(0); }

 private:
  Matrix AL_, AR_;
  Vector b_;
};

// Free-function constructor.
PwlMap make_map(const Matrix& A_L, const Matrix& A_R, const Vector& b,
                double tol_continuity = 1e-12);

// The 3D border-collision normal form map for the given coefficients.
PwlMap bcnf3(const BcnfParams& p);

// One step of f. Points exactly on Sigma use the L piece (both pieces agree
// there; the choice only pins down bit-reproducibility).
Vector apply(const PwlMap& f, const Vector& x);

// One step of the designated piece, regardless of the sign of e1^T x.
Vector apply_symbol(const PwlMap& f, char symbol, const Vector& x);

struct FollowResult {
  bool yes = false;
  // First index whose strict side contradicts its symbol; -1 when yes.
  int first_fail = -1;
  // Indices classified OnSigma (where the flipped word is also followed).
  std::vector<int> boundary_indices;
};

// Definition of "x0 follows w": iterate the forced-branch pieces of w and
// require every iterate to lie on the side its symbol names, points on Sigma
// being unconstrained.
FollowResult follows(const PwlMap& f, const Vector& x0, const Word& w,
                     double tol_sigma = kTolSigmaDefault);

}  // namespace pwlhc
