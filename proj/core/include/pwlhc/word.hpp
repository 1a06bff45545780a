#pragma once

// Symbol-sequence algebra for two-piece map itineraries: flips, cyclic
// permutations, the concatenation two-flip identity, the reinjection offset,
// rotational words, and finite windows of the bi-infinite homoclinic
// itinerary X^inf Y X^inf.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pwlhc/errors.hpp"

namespace pwlhc {

// Immutable word over the alphabet {L, R}. All operations return fresh
// values so words can be shared freely across threads.
class Word {
 public:
  explicit Word(std::string_view symbols);

  int size() const { return static_cast<int>(syms_.size()); }
  char operator[](int i) const { return syms_[static_cast<std::size_t>(i)]; }
  const std::string& str() const { return syms_; }

  friend Word operator+(const Word& a, const Word& b) {
    return Word(a.syms_ + b.syms_);
  }
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::string syms_;
};

// Contiguous window [i_lo, i_hi] of a bi-infinite symbol sequence.  Index 0
// is the first symbol of the Y block; a window may also sit entirely inside
// one of the X tails.
struct SymbolWindow {
  int i_lo = 0;
  std::vector<char> symbols;

  int i_hi() const { return i_lo + static_cast<int>(symbols.size()) - 1; }
  int offset_of_index_zero() const { return -i_lo; }
  char at(int i) const;
};

// Exchange symbol i between L and R.
Word flip(const Word& w, int i);

// i-th left cyclic permutation: X_i ... X_{n-1} X_0 ... X_{i-1}.
Word cyclic_perm(const Word& w, int i);

// The unique alpha in {1,...,n+p-1} with XY equal to YX flipped at 0 and
// alpha, or empty when the two concatenations do not differ in exactly that
// pattern. Requires X_0 != Y_0 (otherwise position 0 cannot differ).
std::optional<int> concat_flip_alpha(const Word& X, const Word& Y);

// Reinjection offset d = -p mod n, in [0, n).
int reinjection_offset(int n, int p);

// Rotational word of length n: symbol i is L iff (i*m mod n) < ell.
// Requires 0 < ell < n, 0 < m < n, gcd(m, n) = 1.
Word rotational_word(int ell, int m, int n);

// True iff the d-th left cyclic permutation of X equals X with symbols 0 and
// i_hat flipped. When i_hat = 0 the two flips cancel, so the test reduces to
// cyclic_perm(X, d) == X.
bool check_rotation_flip(const Word& X, int d, int i_hat);

// Window of the bi-infinite sequence S = X^inf Y X^inf:
//   S_i = X_{i mod n}          for i < 0,
//   S_i = Y_i                  for 0 <= i <= p-1,
//   S_i = X_{(i-p) mod n}      for i >= p.
SymbolWindow homoclinic_window(const Word& X, const Word& Y, int i_lo,
                               int i_hi);

// Split the concatenation XY after its first alpha symbols.
std::pair<Word, Word> split_at_alpha(const Word& X, const Word& Y, int alpha);

// k-fold concatenation X...X (k >= 0; k = 0 gives the empty prefix, so the
// result for k = 0 is only meaningful when concatenated with another word).
std::string word_power(const Word& X, int k);

}  // namespace pwlhc
