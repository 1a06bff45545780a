#pragma once

// The homoclinic S-orbit {y_i} with itinerary S = X^inf Y X^inf, the
// unstable-manifold branch it generates (union of line segments joining y_i
// to y_{i+n}), and the checks that the connection is subsumed: the branch
// stays inside the stable manifold, meeting Sigma only at y_0 and y_alpha.

#include <optional>
#include <utility>
#include <vector>

#include "pwlhc/map.hpp"
#include "pwlhc/spectral.hpp"
#include "pwlhc/word.hpp"

namespace pwlhc {

// Number of returns over which the subsumed-containment bound is asserted by
// default.  The omega1-projection of a computed return amplifies its seed
// error by lambda1 each return, so ten-decimal parameter data (seed ~1e-9)
// supports roughly this many returns below the 1e-6 verification band.
inline constexpr int kSubsumedReturnsDefault = 6;

struct HomoclinicOptions {
  // Backward returns; < 0 means auto: smallest j with
  // |a0| lambda1^{-j} < 1e-12 * max(1, ||x0||_inf).
  int j_back = -1;
  // Forward iteration length; < 0 means auto: p + 30 n.
  int steps_fwd = -1;
  double tol_sigma = kTolSigmaDefault;
};

struct HomoclinicOrbit {
  Word X, Y;
  int alpha = 0;  // second Sigma crossing index (two-flip identity)
  int d = 0;      // reinjection offset, -p mod n
  double a0 = 0;  // coordinate of y_0 along zeta1
  Vector x0;      // X-cycle point the orbit is homoclinic to
  SpectralFrame frame;

  int i_lo = 0, i_hi = 0;
  std::vector<Vector> points;          // index i stored at points[i - i_lo]
  std::vector<Side> classifications;   // same indexing
  // Symbols match (or sit on Sigma) over the tracked forward window.
  bool admissible = false;
  // OnSigma indices over the tracked window, increasing.
  std::vector<int> boundary_hits;
  // First orbit index at which forward tracking is lost: rounding seeds the
  // expanding direction, so the computed returns eventually drift away from
  // the cycle (distance increasing over five consecutive returns).  Empty
  // when the window ends before that happens.
  std::optional<int> divergence_index;

  const Vector& at(int i) const { return points[static_cast<std::size_t>(i - i_lo)]; }
  Side side_at(int i) const { return classifications[static_cast<std::size_t>(i - i_lo)]; }
  // Last index + 1 whose computed point still shadows the true orbit.
  int tracked_end() const { return divergence_index ? *divergence_index : i_hi + 1; }
};

// Intersection y0 = x0 + a0 zeta1 of the unstable direction with Sigma:
// a0 = -(e1^T x0) / (e1^T zeta1), so e1^T y0 = 0 exactly.
std::pair<Vector, double> unstable_intersection(const PwlMap& f,
                                                const SpectralFrame& frame,
                                                const Vector& x0);

// Builds the windowed S-orbit.  Backward returns y_{jn} (j <= 0) are seeded
// analytically as x0 + a0 lambda1^j zeta1 (the backward tail lies on the
// unstable direction), intermediate and forward points by forced-branch
// iteration of the window symbols.
HomoclinicOrbit build_s_orbit(const PwlMap& f, const Word& X, const Word& Y,
                              const SpectralFrame& frame, const Vector& x0,
                              const HomoclinicOptions& opts = {});

struct ManifoldBranch {
  struct Segment {
    int i = 0;
    Vector start;  // y_i
    Vector end;    // y_{i+n}
  };
  std::vector<Segment> segments;
};

// Segments (y_i, y_{i+n}) for every representable i, ordered by i.
// Throws WindowError when the window spans less than two cycle lengths.
ManifoldBranch branch_segments(const HomoclinicOrbit& orbit);

struct SubsumedReport {
  // (a) the two prescribed Sigma crossings
  double y0_residual = 0, y_alpha_residual = 0;
  bool y0_on_sigma = false, y_alpha_on_sigma = false;
  // (b) orbit admissibility over the tracked window
  bool s_orbit_admissible = false;
  int admissibility_checked_through = 0;
  // (c) no i >= 0 with both y_i and y_{i+n} on Sigma
  bool no_double_boundary_hits = false;
  int first_double_hit = -1;
  int horizon_checked = 0;
  // (d) Sigma hits at exactly {0, alpha}
  std::vector<int> boundary_hits;
  bool hits_match_expected = false;
  // (e) subsumed containment: scaled |omega1-projection| of the forward
  // returns y_{p+jn}, j = 0..containment_returns
  std::vector<double> containment_profile;
  double containment_max = 0;
  int containment_returns = 0;
  bool contained = false;

  bool pass = false;
};

// Verifies the subsumed-connection conditions on a built orbit.  horizon < 0
// means steps_fwd - n; checks stop at the orbit's tracked window since later
// points no longer shadow the true orbit.
SubsumedReport verify_subsumed(const PwlMap& f, const HomoclinicOrbit& orbit,
                               int horizon = -1,
                               double tol_sigma = kTolSigmaVerify,
                               int subsumed_returns = kSubsumedReturnsDefault);

}  // namespace pwlhc
