#pragma once

// Word-indexed affine compositions and periodic solutions.  For a word
// W = W_0 ... W_{n-1} the composition f_W = f_{W_{n-1}} o ... o f_{W_0} is
// affine, f_W(x) = M_W x + P_W b, with
//   M_W = A_{W_{n-1}} ... A_{W_0},
//   P_W = I + A_{W_{n-1}} + ... + A_{W_{n-1}} ... A_{W_1}.

#include <complex>
#include <vector>

#include "pwlhc/map.hpp"
#include "pwlhc/word.hpp"

namespace pwlhc {

struct WordComposition {
  Matrix M;
  Matrix P;
  Word word;
};

// Left fold over the word's symbols: M <- A_s M, P <- A_s P + I.
WordComposition compose(const PwlMap& f, const Word& w);

// Composition of two already-computed words (f_{UV} = f_V o f_U):
// M_{UV} = M_V M_U and P_{UV} = M_V P_U + P_V.
WordComposition compose_pair(const WordComposition& U,
                             const WordComposition& V);

enum class Admissibility {
  AdmissibleStrict,
  AdmissibleWithBoundary,
  NotAdmissible,
};

enum class Stability {
  AsymptoticallyStable,
  StableNonstrict,
  Unstable,
  UndeterminedBoundary,
};

const char* to_string(Admissibility a);
const char* to_string(Stability s);

struct Cycle {
  Word word;
  std::vector<Vector> points;
  Admissibility admissibility = Admissibility::NotAdmissible;
  // Indices OnSigma (AdmissibleWithBoundary), in increasing order.
  std::vector<int> boundary_indices;
  // First index on the wrong side (NotAdmissible), else -1.
  int first_failing_index = -1;
  // Eigenvalues of M_W, sorted by descending modulus, ties broken by
  // descending real then descending imaginary part.
  std::vector<std::complex<double>> multipliers;
  Stability stability = Stability::UndeterminedBoundary;
  double tol_sigma = kTolSigmaDefault;

  double max_multiplier_modulus() const;
};

// Eigenvalues of M_W in the deterministic order described above.
std::vector<std::complex<double>> multipliers(const PwlMap& f, const Word& w);

// The unique W-cycle: x_0 solves (I - M_W) x = P_W b (LU with partial
// pivoting), the remaining points follow by forced-branch iteration.
// Throws DegenerateCycleError when |det(I - M_W)| < 1e-12 * ||I - M_W||_inf^N.
Cycle find_cycle(const PwlMap& f, const Word& w,
                 double tol_sigma = kTolSigmaDefault);

// The cycle of the word X^k Y (k >= 0 copies of X, then Y).
Cycle xky_cycle(const PwlMap& f, const Word& X, const Word& Y, int k,
                double tol_sigma = kTolSigmaDefault);

}  // namespace pwlhc
