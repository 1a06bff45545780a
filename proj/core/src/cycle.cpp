#include "pwlhc/cycle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace pwlhc {

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::AdmissibleStrict: return "admissible_strict";
    case Admissibility::AdmissibleWithBoundary: return "admissible_with_boundary";
    case Admissibility::NotAdmissible: return "not_admissible";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::AsymptoticallyStable: return "asymptotically_stable";
    case Stability::StableNonstrict: return "stable_nonstrict";
    case Stability::Unstable: return "unstable";
    case Stability::UndeterminedBoundary: return "undetermined_boundary";
  }
  return "?";
}

double Cycle::max_multiplier_modulus() const {
  double m = 0;
  for (const auto& mu : multipliers) m = std::max(m, std::abs(mu));
  return m;
}

WordComposition compose(const PwlMap& f, const Word& w) {
  const auto N = f.dim();
  WordComposition wc{Matrix::Identity(N, N), Matrix::Zero(N, N), w};
  for (int i = 0; i < w.size(); ++i) {
    const Matrix& A = f.piece(w[i]);
    wc.M = A * wc.M;
    wc.P = A * wc.P + Matrix::Identity(N, N);
  }
  return wc;
}

WordComposition compose_pair(const WordComposition& U,
                             const WordComposition& V) {
  return {V.M * U.M, V.M * U.P + V.P, U.word + V.word};
}

namespace {

std::vector<std::complex<double>> multipliers_of(const Matrix& M,
                                                 const std::string& label) {
  Eigen::EigenSolver<Matrix> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw Error("eigenvalue iteration failed to converge for word " + label);
  std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                       es.eigenvalues().data() + M.rows());
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

constexpr double kStabilityBand = 1e-9;

Stability stability_from(const std::vector<std::complex<double>>& mult,
                         bool any_on_sigma) {
  if (any_on_sigma) return Stability::UndeterminedBoundary;
  double max_mod = 0;
  for (const auto& m : mult) max_mod = std::max(max_mod, std::abs(m));
  if (max_mod < 1.0 - kStabilityBand) return Stability::AsymptoticallyStable;
  if (max_mod <= 1.0 + kStabilityBand) return Stability::StableNonstrict;
  return Stability::Unstable;
}

}  // namespace

std::vector<std::complex<double>> multipliers(const PwlMap& f, const Word& w) {
  return multipliers_of(compose(f, w).M, w.str());
}

Cycle find_cycle(const PwlMap& f, const Word& w, double tol_sigma) {
  const auto N = f.dim();
  const WordComposition wc = compose(f, w);
  const Matrix ImM = Matrix::Identity(N, N) - wc.M;

  Cycle cyc{w};
  cyc.tol_sigma = tol_sigma;
  cyc.multipliers = multipliers_of(wc.M, w.str());

  // Scale-aware guard against 1 being an eigenvalue of M: the gap from 1 to
  // the nearest multiplier, relative to the spectral radius.  (A determinant
  // threshold scaled by ||I - M||^N overshoots once the word contains many
  // expanding blocks and the norm is large.)
  double radius = 0, gap = std::numeric_limits<double>::infinity();
  for (const auto& m : cyc.multipliers) {
    radius = std::max(radius, std::abs(m));
    gap = std::min(gap, std::abs(m - 1.0));
  }
  if (gap < 1e-12 * std::max(1.0, radius))
    throw DegenerateCycleError("1 is an eigenvalue of the cycle matrix for word " +
                               w.str());
  cyc.points.resize(static_cast<std::size_t>(w.size()));
  cyc.points[0] = Eigen::PartialPivLU<Matrix>(ImM).solve(wc.P * f.b());
  for (int i = 1; i < w.size(); ++i)
    cyc.points[static_cast<std::size_t>(i)] =
        apply_symbol(f, w[i - 1], cyc.points[static_cast<std::size_t>(i - 1)]);

  cyc.admissibility = Admissibility::AdmissibleStrict;
  for (int i = 0; i < w.size(); ++i) {
    const Side side = classify_side(cyc.points[static_cast<std::size_t>(i)],
                                    tol_sigma);
    if (side == Side::OnSigma) {
      cyc.boundary_indices.push_back(i);
      if (cyc.admissibility == Admissibility::AdmissibleStrict)
        cyc.admissibility = Admissibility::AdmissibleWithBoundary;
    } else if ((side == Side::StrictL) != (w[i] == 'L')) {
      if (cyc.admissibility != Admissibility::NotAdmissible)
        cyc.first_failing_index = i;
      cyc.admissibility = Admissibility::NotAdmissible;
    }
  }

  cyc.stability = stability_from(cyc.multipliers, !cyc.boundary_indices.empty());
  return cyc;
}

Cycle xky_cycle(const PwlMap& f, const Word& X, const Word& Y, int k,
                double tol_sigma) {
  return find_cycle(f, Word(word_power(X, k) + Y.str()), tol_sigma);
}

}  // namespace pwlhc
