#include "pwlhc/map.hpp"

#include <cmath>
#include <utility>

namespace pwlhc {

const char* to_string(Side s) {
  switch (s) {
    case Side::StrictL: return "L";
    case Side::StrictR: return "R";
    case Side::OnSigma: return "Sigma";
  }
  return "?";
}

Side classify_side(const Vector& x, double tol_sigma) {
  const double band = tol_sigma * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  const double h = x(0);
  if (h < -band) return Side::StrictL;
  if (h > band) return Side::StrictR;
  return Side::OnSigma;
}

PwlMap::PwlMap(Matrix A_L, Matrix A_R, Vector b, double tol_continuity)
    : AL_(std::move(A_L)), AR_(std::move(A_R)), b_(std::move(b)) {
  const auto N = AL_.rows();
  if (N < 2) throw DimensionError("map dimension must be at least 2");
  if (AL_.cols() != N || AR_.rows() != N || AR_.cols() != N || b_.size() != N)
    throw DimensionError("A_L, A_R must be square of equal size and match b");
  // Continuity across Sigma: A_R - A_L may differ only in its first column.
  for (Eigen::Index col = 1; col < N; ++col) {
    const double mag = (AR_.col(col) - AL_.col(col)).lpNorm<Eigen::Infinity>();
    if (mag > tol_continuity)
      throw ContinuityError(static_cast<int>(col), mag);
  }
}

PwlMap make_map(const Matrix& A_L, const Matrix& A_R, const Vector& b,
                double tol_continuity) {
  return PwlMap(A_L, A_R, b, tol_continuity);
}

PwlMap bcnf3(const BcnfParams& p) {
  Matrix AL(3, 3), AR(3, 3);
  AL << p.tau_L, 1, 0,
       -p.sigma_L, 0, 1,
        p.delta_L, 0, 0;
  AR << p.tau_R, 1, 0,
       -p.sigma_R, 0, 1,
        p.delta_R, 0, 0;
  Vector b(3);
  b << p.mu, 0, 0;
  return PwlMap(std::move(AL), std::move(AR), std::move(b), 0.0);
}

Vector apply(const PwlMap& f, const Vector& x) {
  // On Sigma both pieces agree; take L for determinism.
  return (x(0) > 0 ? f.AR() : f.AL()) * x + f.b();
}

Vector apply_symbol(const PwlMap& f, char symbol, const Vector& x) {
  return f.piece(symbol) * x + f.b();
}

FollowResult follows(const PwlMap& f, const Vector& x0, const Word& w,
                     double tol_sigma) {
  FollowResult res;
  res.yes = true;
  Vector x = x0;
  for (int i = 0; i < w.size(); ++i) {
    const Side side = classify_side(x, tol_sigma);
    if (side == Side::OnSigma) {
      res.boundary_indices.push_back(i);
    } else if ((side == Side::StrictL) != (w[i] == 'L')) {
      res.yes = false;
      res.first_fail = i;
      return res;
    }
    x = apply_symbol(f, w[i], x);
  }
  return res;
}

}  // namespace pwlhc
