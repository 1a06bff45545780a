#pragma once

// Eigen-structure of a cycle matrix M: the saddle eigenvalues
// 0 <= beta < lambda2 < 1 < lambda1 (lambda1, lambda2 real and simple,
// beta the largest remaining modulus), the normalized eigenvector quadruple
// (zeta1, zeta2, omega1, omega2) with omega_i^T zeta_i = 1, and the scalar
// invariants obtained by projecting a second word's composition onto it.

#include "pwlhc/cycle.hpp"
#include "pwlhc/map.hpp"

namespace pwlhc {

struct SpectralFrame {
  double lambda1 = 0;  // expanding eigenvalue, > 1
  double lambda2 = 0;  // slow contracting eigenvalue, in (0, 1)
  double beta = 0;     // max modulus of the remaining eigenvalues
  Vector zeta1, zeta2;    // right eigenvectors
  Vector omega1, omega2;  // left eigenvectors, omega_i^T zeta_i = 1
  double e1_zeta1 = 0;    // cached transversality value e1^T zeta1
};

// Builds the frame from M.  Sign conventions: e1^T zeta1 > 0 and the
// largest-magnitude component of zeta2 positive, making output deterministic.
// Throws EigenConditionError (naming the violated inequality or the
// complex/repeated leading eigenvalue) and TransversalityError when
// |e1^T zeta1| <= tol.
SpectralFrame build_frame(const Matrix& M, double tol = 1e-9);

struct UCoords {
  double a = 0;  // omega1-projection: displacement from the stable manifold
  double s = 0;  // omega2-projection: slow-direction coordinate
};

// a = omega1^T (x - x0), s = omega2^T (x - x0).
UCoords u_project(const SpectralFrame& frame, const Vector& x0,
                  const Vector& x);

struct ProjectedQuantities {
  double c = 0;  // det of the 2x2 projected block, gamma11*gamma22 - gamma12*gamma21
  double gamma11 = 0, gamma12 = 0, gamma21 = 0, gamma22 = 0;
  double psi1 = 0, psi2 = 0;
};

// gamma_ij = omega_i^T M_Y zeta_j and psi_i = omega_i^T (P_Y b - (I - M_Y) x0),
// where x0 is the X-cycle point the frame was built around.
ProjectedQuantities projected_quantities(const SpectralFrame& frame,
                                         const PwlMap& f, const Word& Y,
                                         const Vector& x0);

// Scaled residual of the identity psi2 = -a0 (lambda1 - lambda2) gamma21 / (1 - lambda2),
// which holds when the orbit leaving the manifold intersection returns to it.
double psi2_identity_residual(const SpectralFrame& frame,
                              const ProjectedQuantities& q, double a0);

}  // namespace pwlhc
