#include "pwlhc/word.hpp"

#include <numeric>
#include <stdexcept>

namespace pwlhc {

Word::Word(std::string_view symbols) : syms_(symbols) {
  if (syms_.empty()) throw WordError("empty word");
  for (char c : syms_) {
    if (c != 'L' && c != 'R')
      throw WordError(std::string("invalid symbol '") + c + "' in word");
  }
}

char SymbolWindow::at(int i) const {
  if (i < i_lo || i > i_hi())
    throw std::out_of_range("window index " + std::to_string(i) +
                            " outside [" + std::to_string(i_lo) + ", " +
                            std::to_string(i_hi()) + "]");
  return symbols[static_cast<std::size_t>(i - i_lo)];
}

namespace {

char flipped(char c) { return c == 'L' ? 'R' : 'L'; }

void check_index(const Word& w, int i) {
  if (i < 0 || i >= w.size())
    throw std::out_of_range("symbol index " + std::to_string(i) +
                            " out of range for word of length " +
                            std::to_string(w.size()));
}

}  // namespace

Word flip(const Word& w, int i) {
  check_index(w, i);
  std::string s = w.str();
  s[static_cast<std::size_t>(i)] = flipped(s[static_cast<std::size_t>(i)]);
  return Word(s);
}

Word cyclic_perm(const Word& w, int i) {
  check_index(w, i);
  const std::string& s = w.str();
  return Word(s.substr(static_cast<std::size_t>(i)) +
              s.substr(0, static_cast<std::size_t>(i)));
}

std::optional<int> concat_flip_alpha(const Word& X, const Word& Y) {
  if (X[0] == Y[0])
    throw WordError("two-flip identity requires X_0 != Y_0");
  const std::string xy = X.str() + Y.str();
  const std::string yx = Y.str() + X.str();
  int alpha = -1;
  int mismatches = 0;
  for (int i = 0; i < static_cast<int>(xy.size()); ++i) {
    if (xy[static_cast<std::size_t>(i)] == yx[static_cast<std::size_t>(i)])
      continue;
    ++mismatches;
    if (i > 0) alpha = i;
  }
  // The identity needs mismatches at exactly {0, alpha} with alpha >= 1.
  if (mismatches != 2 || alpha < 0) return std::nullopt;
  return alpha;
}

int reinjection_offset(int n, int p) {
  if (n < 1 || p < 1) throw WordError("word lengths must be positive");
  return ((-p) % n + n) % n;
}

Word rotational_word(int ell, int m, int n) {
  if (!(0 < ell && ell < n && 0 < m && m < n))
    throw WordError("rotational word requires 0 < ell < n and 0 < m < n");
  if (std::gcd(m, n) != 1)
    throw WordError("rotational word requires gcd(m, n) = 1");
  std::string s(static_cast<std::size_t>(n), 'R');
  for (int i = 0; i < n; ++i) {
    if ((i * m) % n < ell) s[static_cast<std::size_t>(i)] = 'L';
  }
  return Word(s);
}

bool check_rotation_flip(const Word& X, int d, int i_hat) {
  check_index(X, d);
  check_index(X, i_hat);
  Word target = i_hat == 0 ? X : flip(flip(X, 0), i_hat);
  return cyclic_perm(X, d) == target;
}

SymbolWindow homoclinic_window(const Word& X, const Word& Y, int i_lo,
                               int i_hi) {
  if (i_lo > i_hi) throw WindowError("window bounds out of order");
  const int n = X.size();
  const int p = Y.size();
  SymbolWindow win;
  win.i_lo = i_lo;
  win.symbols.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
  for (int i = i_lo; i <= i_hi; ++i) {
    char c;
    if (i < 0)
      c = X[((i % n) + n) % n];
    else if (i < p)
      c = Y[i];
    else
      c = X[(i - p) % n];
    win.symbols.push_back(c);
  }
  return win;
}

std::pair<Word, Word> split_at_alpha(const Word& X, const Word& Y, int alpha) {
  const std::string xy = X.str() + Y.str();
  if (alpha < 1 || alpha >= static_cast<int>(xy.size()))
    throw std::out_of_range("split index " + std::to_string(alpha) +
                            " outside [1, n+p-1]");
  return {Word(xy.substr(0, static_cast<std::size_t>(alpha))),
          Word(xy.substr(static_cast<std::size_t>(alpha)))};
}

std::string word_power(const Word& X, int k) {
  if (k < 0) throw WordError("word power requires k >= 0");
  std::string s;
  s.reserve(static_cast<std::size_t>(k) * X.str().size());
  for (int i = 0; i < k; ++i) s += X.str();
  return s;
}

}  // namespace pwlhc
