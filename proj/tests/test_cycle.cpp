#include <doctest.h>

#include <optional>
#include <random>

#include "oracle_poly.hpp"
#include "oracles.hpp"
#include "pwlhc/cycle.hpp"

using namespace pwlhc;

namespace {

PwlMap random_map(std::mt19937& rng, int N) {
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  Matrix AL(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) AL(i, j) = u(rng);
  Matrix AR = AL;
  for (int i = 0; i < N; ++i) AR(i, 0) += u(rng);
  Vector b(N);
  for (int i = 0; i < N; ++i) b(i) = u(rng);
  return make_map(AL, AR, b);
}

Word random_word(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> bit(0, 1);
  std::string s;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) s += bit(rng) ? 'R' : 'L';
  return Word(s);
}

}  // namespace

TEST_CASE("composition equals symbol-by-symbol iteration") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + trial % 3;
    const PwlMap f = random_map(rng, N);
    const Word w = random_word(rng, 6);
    const WordComposition wc = compose(f, w);
    Vector x(N);
    for (int i = 0; i < N; ++i) x(i) = u(rng);
    Vector direct = x;
    for (int i = 0; i < w.size(); ++i) direct = apply_symbol(f, w[i], direct);
    const Vector via = wc.M * x + wc.P * f.b();
    const double scale = std::max(1.0, direct.lpNorm<Eigen::Infinity>());
    CHECK((via - direct).lpNorm<Eigen::Infinity>() <= 1e-12 * scale);
  }
}

TEST_CASE("pair composition matches composing the concatenation") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const PwlMap f = random_map(rng, 3);
    const Word u = random_word(rng, 5), v = random_word(rng, 5);
    const WordComposition uv = compose_pair(compose(f, u), compose(f, v));
    const WordComposition direct = compose(f, u + v);
    CHECK(uv.word == direct.word);
    CHECK((uv.M - direct.M).lpNorm<Eigen::Infinity>() <=
          1e-12 * std::max(1.0, direct.M.lpNorm<Eigen::Infinity>()));
    CHECK((uv.P - direct.P).lpNorm<Eigen::Infinity>() <=
          1e-12 * std::max(1.0, direct.P.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("cycles close up and follow their words") {
  std::mt19937 rng(17);
  int checked = 0;
  while (checked < 100) {
    const int N = 2 + checked % 2;
    const PwlMap f = random_map(rng, N);
    const Word w = random_word(rng, 6);
    std::optional<Cycle> found;
    try {
      found = find_cycle(f, w);
    } catch (const DegenerateCycleError&) {
      continue;  // redraw
    }
    const Cycle& cyc = *found;
    ++checked;
    REQUIRE(static_cast<int>(cyc.points.size()) == w.size());
    // Interior steps and closure.
    double scale = 1.0;
    for (const auto& p : cyc.points)
      scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
    for (int i = 0; i < w.size(); ++i) {
      const Vector next =
          apply_symbol(f, w[i], cyc.points[static_cast<std::size_t>(i)]);
      const Vector& expect =
          cyc.points[static_cast<std::size_t>((i + 1) % w.size())];
      CHECK((next - expect).lpNorm<Eigen::Infinity>() <= 1e-9 * scale);
    }
  }
}

TEST_CASE("multipliers match the characteristic-polynomial oracle") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = 2 + trial % 2;
    const PwlMap f = random_map(rng, N);
    const Word w = random_word(rng, 6);
    const auto mults = multipliers(f, w);
    const auto oracle = oracle_poly::eigenvalues(compose(f, w).M);
    REQUIRE(mults.size() == oracle.size());
    for (std::size_t i = 0; i < mults.size(); ++i)
      CHECK(std::abs(mults[i] - oracle[i]) <=
            1e-9 * std::max(1.0, std::abs(mults[i])));
  }
}

TEST_CASE("multipliers are invariant under cyclic permutation") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const PwlMap f = random_map(rng, 3);
    const Word w = random_word(rng, 6);
    const auto base = multipliers(f, w);
    for (int i = 1; i < w.size(); ++i) {
      const auto perm = multipliers(f, cyclic_perm(w, i));
      REQUIRE(perm.size() == base.size());
      for (std::size_t k = 0; k < base.size(); ++k)
        CHECK(std::abs(perm[k] - base[k]) <=
              1e-9 * std::max(1.0, std::abs(base[k])));
    }
  }
}

TEST_CASE("degenerate words are rejected") {
  // A_L has eigenvalue 1, so the one-letter word L yields a singular system.
  Matrix AL(2, 2);
  AL << 1, 0, 0, 0.5;
  Matrix AR = AL;
  AR.col(0) << -0.3, 0.1;
  Vector b(2);
  b << 1, 0;
  const PwlMap f = make_map(AL, AR, b);
  CHECK_THROWS_AS(find_cycle(f, Word("L")), DegenerateCycleError);
  CHECK_NOTHROW(find_cycle(f, Word("R")));
}

TEST_CASE("benchmark attractor families classify as published") {
  struct Expect {
    const oracles::BenchmarkPoint* pt;
    int k_admissible_from, k_max;
  };
  for (const auto& [pt, k_from, k_max] :
       {Expect{&oracles::kParamA, 0, 7}, Expect{&oracles::kParamB, 2, 9},
        Expect{&oracles::kParamC, 0, 7}}) {
    const PwlMap f = bcnf3(pt->params);
    const Word X(pt->X), Y(pt->Y);
    for (int k = 0; k <= k_max; ++k) {
      const Cycle cyc = xky_cycle(f, X, Y, k);
      CHECK(cyc.word.str() == word_power(X, k) + Y.str());
      if (k >= k_from) {
        CHECK(cyc.admissibility == Admissibility::AdmissibleStrict);
        CHECK(cyc.stability == Stability::AsymptoticallyStable);
        CHECK(cyc.max_multiplier_modulus() < 1.0);
      } else {
        CHECK(cyc.admissibility == Admissibility::NotAdmissible);
        CHECK(cyc.first_failing_index >= 0);
      }
    }
  }
}

TEST_CASE("cycle points of the saddle word match the reference solution") {
  for (const auto* pt : oracles::kAll) {
    const PwlMap f = bcnf3(pt->params);
    const Cycle cyc = find_cycle(f, Word(pt->X));
    for (int i = 0; i < 3; ++i)
      CHECK(cyc.points[0](i) == doctest::Approx(pt->x0[i]).epsilon(1e-9));
    CHECK(cyc.stability == Stability::Unstable);
  }
}
