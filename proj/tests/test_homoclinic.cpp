#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pwlhc/cycle.hpp"
#include "pwlhc/homoclinic.hpp"

using namespace pwlhc;

namespace {

struct Setup {
  PwlMap f;
  Word X, Y;
  SpectralFrame frame;
  Vector x0;
};

Setup make_setup(const oracles::BenchmarkPoint& pt) {
  PwlMap f = bcnf3(pt.params);
  Word X(pt.X), Y(pt.Y);
  SpectralFrame frame = build_frame(compose(f, X).M);
  Vector x0 = find_cycle(f, X).points[0];
  return {std::move(f), std::move(X), std::move(Y), std::move(frame),
          std::move(x0)};
}

}  // namespace

TEST_CASE("unstable-direction intersection with the switching manifold") {
  // Synthetic frame: only zeta1 and e1^T zeta1 matter here.
  SpectralFrame fr;
  fr.zeta1 = Vector(3);
  fr.zeta1 << 1, 1, 0;
  fr.e1_zeta1 = 1.0;
  Vector x0(3);
  x0 << 1, 0, 0;
  const PwlMap f = bcnf3({0.5, 1, 0.25, -0.5, 1, 0.5, 1.0});
  const auto [y0, a0] = unstable_intersection(f, fr, x0);
  CHECK(a0 == -1.0);
  CHECK(y0(0) == 0.0);
  CHECK(y0(1) == -1.0);
  CHECK(y0(2) == 0.0);
}

TEST_CASE("windowed orbit: backward tail, stepping, and crossings") {
  for (const auto* pt : oracles::kAll) {
    CAPTURE(pt->name);
    const Setup s = make_setup(*pt);
    const int n = s.X.size(), p = s.Y.size();
    const HomoclinicOrbit orb =
        build_s_orbit(s.f, s.X, s.Y, s.frame, s.x0, {});

    CHECK(orb.alpha == pt->alpha);
    CHECK(orb.d == pt->d);
    CHECK(orb.a0 == doctest::Approx(pt->a0).epsilon(1e-9));
    CHECK(orb.i_lo <= -n);
    CHECK(orb.i_hi >= p + 2 * n);
    CHECK(orb.i_lo % n == 0);

    // Backward returns lie on the unstable direction: y_{-jn} on the ray
    // x0 + a0 lambda1^{-j} zeta1.
    for (int j = 0; -j >= orb.i_lo / n; ++j) {
      const Vector expect =
          s.x0 + pt->a0 * std::pow(s.frame.lambda1, -j) * s.frame.zeta1;
      CHECK((orb.at(-j * n) - expect).lpNorm<Eigen::Infinity>() <=
            1e-9 * std::max(1.0, expect.lpNorm<Eigen::Infinity>()));
    }
    // The deepest backward return is at the rounding floor (ulp slack for
    // the pow-vs-repeated-division difference).
    CHECK(std::abs(pt->a0) * std::pow(s.frame.lambda1, orb.i_lo / n) <
          1.001e-12 * std::max(1.0, s.x0.lpNorm<Eigen::Infinity>()));

    // Forced-branch stepping ties every adjacent pair together.
    const SymbolWindow win =
        homoclinic_window(s.X, s.Y, orb.i_lo, orb.i_hi);
    for (int i = orb.i_lo; i < orb.tracked_end() - 1; ++i) {
      const Vector next = apply_symbol(s.f, win.at(i), orb.at(i));
      CHECK((next - orb.at(i + 1)).lpNorm<Eigen::Infinity>() <=
            1e-9 * std::max(1.0, next.lpNorm<Eigen::Infinity>()));
    }

    // The itinerary is followed and Sigma is hit exactly at 0 and alpha.
    CHECK(orb.admissible);
    CHECK(orb.boundary_hits == std::vector<int>{0, pt->alpha});

    // y_0 is the manifold intersection.
    const auto [y0, a0] = unstable_intersection(s.f, s.frame, s.x0);
    CHECK((orb.at(0) - y0).lpNorm<Eigen::Infinity>() <=
          1e-9 * std::max(1.0, y0.lpNorm<Eigen::Infinity>()));
    CHECK(a0 == doctest::Approx(pt->a0).epsilon(1e-10));
  }
}

TEST_CASE("forward returns converge to the saddle cycle at rate lambda2") {
  const auto& pt = oracles::kParamA;
  const Setup s = make_setup(pt);
  const int n = s.X.size(), p = s.Y.size();
  const HomoclinicOrbit orb = build_s_orbit(s.f, s.X, s.Y, s.frame, s.x0, {});

  // Distances to the cycle point the reinjected tail tracks.
  std::vector<double> dist;
  for (int j = 0; p + j * n < orb.tracked_end(); ++j)
    dist.push_back((orb.at(p + j * n) - s.x0).lpNorm<Eigen::Infinity>());
  REQUIRE(dist.size() >= 10);
  for (std::size_t j = 0; j + 1 < 10; ++j) CHECK(dist[j + 1] < dist[j]);
  // Early ratios carry a fast-decaying component from the third
  // eigendirection; by j = 3 that has died off.
  for (std::size_t j = 3; j + 1 < 10; ++j)
    CHECK(dist[j + 1] / dist[j] ==
          doctest::Approx(s.frame.lambda2).epsilon(0.05));

  // Rounding eventually seeds the expanding direction; the divergence point
  // is detected and sits far beyond the verification horizon.
  REQUIRE(orb.divergence_index.has_value());
  CHECK(*orb.divergence_index > p + 8 * n);
}

TEST_CASE("branch segments chain head to tail") {
  const Setup s = make_setup(oracles::kParamA);
  const HomoclinicOrbit orb = build_s_orbit(s.f, s.X, s.Y, s.frame, s.x0, {});
  const ManifoldBranch br = branch_segments(orb);
  const int n = s.X.size();
  REQUIRE(!br.segments.empty());
  CHECK(br.segments.front().i == orb.i_lo);
  CHECK(br.segments.back().i == orb.i_hi - n);
  for (std::size_t k = 0; k < br.segments.size(); ++k) {
    const auto& seg = br.segments[k];
    CHECK((seg.start - orb.at(seg.i)).lpNorm<Eigen::Infinity>() == 0);
    CHECK((seg.end - orb.at(seg.i + n)).lpNorm<Eigen::Infinity>() == 0);
    if (k >= static_cast<std::size_t>(n))
      CHECK((seg.start - br.segments[k - static_cast<std::size_t>(n)].end)
                .lpNorm<Eigen::Infinity>() == 0);
  }

  // A window shorter than two cycle lengths cannot hold a single segment
  // plus its image.
  HomoclinicOptions tiny;
  tiny.j_back = 0;
  tiny.steps_fwd = s.X.size();
  const HomoclinicOrbit small =
      build_s_orbit(s.f, s.X, s.Y, s.frame, s.x0, tiny);
  CHECK_THROWS_AS(branch_segments(small), WindowError);
}

TEST_CASE("subsumed-connection verification at the benchmark points") {
  for (const auto* pt : oracles::kAll) {
    CAPTURE(pt->name);
    const Setup s = make_setup(*pt);
    const HomoclinicOrbit orb =
        build_s_orbit(s.f, s.X, s.Y, s.frame, s.x0, {});
    const SubsumedReport rep = verify_subsumed(s.f, orb);
    CHECK(rep.y0_on_sigma);
    CHECK(rep.y_alpha_on_sigma);
    CHECK(rep.y0_residual < 1e-6);
    CHECK(rep.y_alpha_residual < 1e-6);
    CHECK(rep.s_orbit_admissible);
    CHECK(rep.no_double_boundary_hits);
    CHECK(rep.first_double_hit == -1);
    CHECK(rep.hits_match_expected);
    CHECK(rep.contained);
    CHECK(rep.containment_max < 1e-6);
    CHECK(rep.containment_returns == kSubsumedReturnsDefault);
    CHECK(static_cast<int>(rep.containment_profile.size()) ==
          kSubsumedReturnsDefault + 1);
    CHECK(rep.pass);
  }
}

TEST_CASE("a parameter shift breaks the subsumed connection measurably") {
  BcnfParams p = oracles::kParamA.params;
  p.tau_L += 1e-3;
  const PwlMap f = bcnf3(p);
  const Word X(oracles::kParamA.X), Y(oracles::kParamA.Y);
  const SpectralFrame frame = build_frame(compose(f, X).M);
  const Vector x0 = find_cycle(f, X).points[0];
  const HomoclinicOrbit orb = build_s_orbit(f, X, Y, frame, x0, {});
  const SubsumedReport rep = verify_subsumed(f, orb);
  CHECK(!rep.pass);
  // The second crossing misses Sigma by well over the verification band.
  CHECK(rep.y_alpha_residual > 1e-5);
}
