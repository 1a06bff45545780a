#include "pwlhc/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

namespace pwlhc {

namespace {

struct EigPair {
  std::complex<double> value;
  Eigen::VectorXcd vector;
};

// Eigenvalues with right eigenvectors, sorted by descending modulus with the
// same deterministic tie-break as multipliers().
std::vector<EigPair> sorted_eigs(const Matrix& M) {
  Eigen::EigenSolver<Matrix> es(M, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw Error("eigenvalue iteration failed to converge");
  std::vector<EigPair> out;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    out.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
  std::sort(out.begin(), out.end(), [](const EigPair& a, const EigPair& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

// Rotate the complex phase so the largest-magnitude component is real and
// positive, then drop the (numerically zero) imaginary part.
Vector realize(const Eigen::VectorXcd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  Eigen::VectorXcd w = v * (std::abs(v(imax)) / v(imax));
  return w.real();
}

}  // namespace

SpectralFrame build_frame(const Matrix& M, double tol) {
  const auto eigs = sorted_eigs(M);
  if (M.rows() < 2)
    throw EigenConditionError("frame requires two leading eigenvalues");

  const double rho = std::abs(eigs[0].value);
  auto is_real = [&](const std::complex<double>& v) {
    return std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v));
  };
  auto min_gap = [&](std::size_t idx) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < eigs.size(); ++j)
      if (j != idx) g = std::min(g, std::abs(eigs[idx].value - eigs[j].value));
    return g;
  };

  for (std::size_t idx : {std::size_t{0}, std::size_t{1}}) {
    if (!is_real(eigs[idx].value))
      throw EigenConditionError(
          "leading eigenvalue " + std::to_string(idx + 1) +
          " is complex; the frame requires two real simple eigenvalues");
    if (min_gap(idx) < 1e-8 * rho)
      throw EigenConditionError(
          "leading eigenvalue " + std::to_string(idx + 1) +
          " is not simple within tolerance");
  }

  const double lambda1 = eigs[0].value.real();
  const double lambda2 = eigs[1].value.real();
  double beta = 0;
  for (std::size_t j = 2; j < eigs.size(); ++j)
    beta = std::max(beta, std::abs(eigs[j].value));

  // Ordering 0 <= beta < lambda2 < 1 < lambda1, reported by the violated leg.
  if (!(lambda1 > 1.0))
    throw EigenConditionError("eigenvalue ordering violated: lambda1 <= 1");
  if (!(lambda2 < 1.0))
    throw EigenConditionError("eigenvalue ordering violated: lambda2 >= 1");
  if (!(lambda2 > 0.0))
    throw EigenConditionError("eigenvalue ordering violated: lambda2 <= 0");
  if (!(beta < lambda2))
    throw EigenConditionError("eigenvalue ordering violated: beta >= lambda2");

  SpectralFrame fr;
  fr.lambda1 = lambda1;
  fr.lambda2 = lambda2;
  fr.beta = beta;
  fr.zeta1 = realize(eigs[0].vector);
  fr.zeta2 = realize(eigs[1].vector);

  // Sign conventions: e1^T zeta1 > 0; zeta2's largest-magnitude component
  // positive (already arranged by realize()).
  if (std::abs(fr.zeta1(0)) <= tol * fr.zeta1.lpNorm<Eigen::Infinity>())
    throw TransversalityError(
        "unstable eigenvector is tangent to the switching manifold "
        "(|e1^T zeta1| below tolerance)");
  if (fr.zeta1(0) < 0) fr.zeta1 = -fr.zeta1;

  // Left eigenvectors from the transpose, matched by eigenvalue.
  const auto left = sorted_eigs(M.transpose());
  auto pick_left = [&](double lambda) -> Vector {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < left.size(); ++j) {
      const double d = std::abs(left[j].value - std::complex<double>(lambda));
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    return realize(left[best].vector);
  };

  Vector w1 = pick_left(lambda1);
  Vector w2 = pick_left(lambda2);
  const double n1 = w1.dot(fr.zeta1);
  const double n2 = w2.dot(fr.zeta2);
  if (std::abs(n1) < 1e-14 || std::abs(n2) < 1e-14)
    throw EigenConditionError(
        "left/right eigenvector pairing is numerically defective");
  fr.omega1 = w1 / n1;
  fr.omega2 = w2 / n2;
  fr.e1_zeta1 = fr.zeta1(0);
  return fr;
}

UCoords u_project(const SpectralFrame& frame, const Vector& x0,
                  const Vector& x) {
  const Vector dx = x - x0;
  return {frame.omega1.dot(dx), frame.omega2.dot(dx)};
}

ProjectedQuantities projected_quantities(const SpectralFrame& frame,
                                         const PwlMap& f, const Word& Y,
                                         const Vector& x0) {
  const WordComposition yc = compose(f, Y);
  ProjectedQuantities q;
  q.gamma11 = frame.omega1.dot(yc.M * frame.zeta1);
  q.gamma12 = frame.omega1.dot(yc.M * frame.zeta2);
  q.gamma21 = frame.omega2.dot(yc.M * frame.zeta1);
  q.gamma22 = frame.omega2.dot(yc.M * frame.zeta2);
  const Vector r = yc.P * f.b() - (x0 - yc.M * x0);
  q.psi1 = frame.omega1.dot(r);
  q.psi2 = frame.omega2.dot(r);
  q.c = q.gamma11 * q.gamma22 - q.gamma12 * q.gamma21;
  return q;
}

double psi2_identity_residual(const SpectralFrame& frame,
                              const ProjectedQuantities& q, double a0) {
  const double predicted =
      -a0 * (frame.lambda1 - frame.lambda2) * q.gamma21 / (1.0 - frame.lambda2);
  return std::abs(q.psi2 - predicted) / std::max(1.0, std::abs(q.psi2));
}

}  // namespace pwlhc
