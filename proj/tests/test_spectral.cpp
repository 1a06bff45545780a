#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pwlhc/cycle.hpp"
#include "pwlhc/spectral.hpp"

using namespace pwlhc;

TEST_CASE("spectral frame reproduces the reference saddle structure") {
  for (const auto* pt : oracles::kAll) {
    CAPTURE(pt->name);
    const PwlMap f = bcnf3(pt->params);
    const SpectralFrame fr = build_frame(compose(f, Word(pt->X)).M);
    CHECK(fr.lambda1 == doctest::Approx(pt->lambda1).epsilon(1e-10));
    CHECK(fr.lambda2 == doctest::Approx(pt->lambda2).epsilon(1e-10));
    // beta can be tiny (1e-3 at one point); QR accuracy is absolute in the
    // matrix scale, so compare with a scale floor rather than tight relative.
    CHECK(fr.beta == doctest::Approx(pt->beta).scale(1).epsilon(1e-9));
    CHECK(fr.lambda1 > 1.0);
    CHECK(fr.lambda2 < 1.0);
    CHECK(fr.lambda2 > fr.beta);
    // Normalization and sign conventions.
    CHECK(fr.omega1.dot(fr.zeta1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fr.omega2.dot(fr.zeta2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fr.omega1.dot(fr.zeta2) == doctest::Approx(0.0).scale(1).epsilon(1e-9));
    CHECK(fr.omega2.dot(fr.zeta1) == doctest::Approx(0.0).scale(1).epsilon(1e-9));
    CHECK(fr.e1_zeta1 > 0.0);
    CHECK(fr.e1_zeta1 == doctest::Approx(fr.zeta1(0)));
    int imax = 0;
    fr.zeta2.cwiseAbs().maxCoeff(&imax);
    CHECK(fr.zeta2(imax) > 0.0);
  }
}

TEST_CASE("eigenvectors satisfy the eigenvalue equations") {
  for (const auto* pt : oracles::kAll) {
    const PwlMap f = bcnf3(pt->params);
    const Matrix M = compose(f, Word(pt->X)).M;
    const SpectralFrame fr = build_frame(M);
    CHECK((M * fr.zeta1 - fr.lambda1 * fr.zeta1).lpNorm<Eigen::Infinity>() <=
          1e-9 * fr.lambda1);
    CHECK((M * fr.zeta2 - fr.lambda2 * fr.zeta2).lpNorm<Eigen::Infinity>() <=
          1e-9);
    CHECK((M.transpose() * fr.omega1 - fr.lambda1 * fr.omega1)
              .lpNorm<Eigen::Infinity>() <=
          1e-9 * fr.lambda1 * fr.omega1.lpNorm<Eigen::Infinity>());
    CHECK((M.transpose() * fr.omega2 - fr.lambda2 * fr.omega2)
              .lpNorm<Eigen::Infinity>() <=
          1e-9 * fr.omega2.lpNorm<Eigen::Infinity>());
  }
}

TEST_CASE("frame construction rejects broken eigenstructure") {
  // Repeated eigenvalue (and lambda1 = 1): the identity.
  CHECK_THROWS_AS(build_frame(Matrix::Identity(3, 3)), EigenConditionError);

  // No expanding eigenvalue.
  Matrix contracting = Matrix::Zero(3, 3);
  contracting.diagonal() << 0.9, 0.5, 0.1;
  CHECK_THROWS_AS(build_frame(contracting), EigenConditionError);

  // No slow contracting eigenvalue between beta and 1.
  Matrix expanding = Matrix::Zero(3, 3);
  expanding.diagonal() << 2.0, 1.5, 0.5;
  CHECK_THROWS_AS(build_frame(expanding), EigenConditionError);

  // Complex leading pair: a scaled rotation block.
  Matrix rot = Matrix::Zero(3, 3);
  rot(0, 0) = 1.2;
  rot(0, 1) = -1.2;
  rot(1, 0) = 1.2;
  rot(1, 1) = 1.2;
  rot(2, 2) = 0.5;
  CHECK_THROWS_AS(build_frame(rot), EigenConditionError);

  // Valid saddle but zeta1 orthogonal to e1.
  Matrix blind = Matrix::Zero(3, 3);
  blind.diagonal() << 0.5, 2.0, 0.1;
  CHECK_THROWS_AS(build_frame(blind), TransversalityError);

  // The same spectrum with the expanding direction visible from e1 is fine.
  Matrix good = Matrix::Zero(3, 3);
  good.diagonal() << 2.0, 0.5, 0.1;
  CHECK_NOTHROW(build_frame(good));
}

TEST_CASE("projection coordinates invert the frame expansion") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-2, 2);
  const PwlMap f = bcnf3(oracles::kParamA.params);
  const Matrix M = compose(f, Word(oracles::kParamA.X)).M;
  const SpectralFrame fr = build_frame(M);
  Vector x0(3);
  x0 << 1, -2, 0.5;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng), s = u(rng);
    const UCoords c = u_project(fr, x0, x0 + a * fr.zeta1 + s * fr.zeta2);
    CHECK(c.a == doctest::Approx(a).scale(1).epsilon(1e-10));
    CHECK(c.s == doctest::Approx(s).scale(1).epsilon(1e-10));
  }
}

TEST_CASE("projected quantities match the reference values") {
  for (const auto* pt : oracles::kAll) {
    CAPTURE(pt->name);
    const PwlMap f = bcnf3(pt->params);
    const Cycle xc = find_cycle(f, Word(pt->X));
    const SpectralFrame fr = build_frame(compose(f, Word(pt->X)).M);
    const ProjectedQuantities q =
        projected_quantities(fr, f, Word(pt->Y), xc.points[0]);
    CHECK(q.c == doctest::Approx(pt->c).epsilon(1e-9));
    CHECK(q.gamma12 == doctest::Approx(pt->gamma12).epsilon(1e-8));
    CHECK(q.gamma21 == doctest::Approx(pt->gamma21).epsilon(1e-8));
    CHECK(q.gamma22 == doctest::Approx(pt->gamma22).epsilon(1e-8));
    CHECK(q.psi2 == doctest::Approx(pt->psi2).epsilon(1e-8));
    // The codimension-three conditions hold to the published truncation.
    CHECK(std::abs(q.gamma11) < 1e-8);
    CHECK(std::abs(q.psi1) < 1e-8);
  }
}

TEST_CASE("second-projection identity holds at the benchmark points") {
  for (const auto* pt : oracles::kAll) {
    const PwlMap f = bcnf3(pt->params);
    const Cycle xc = find_cycle(f, Word(pt->X));
    const SpectralFrame fr = build_frame(compose(f, Word(pt->X)).M);
    const ProjectedQuantities q =
        projected_quantities(fr, f, Word(pt->Y), xc.points[0]);
    CHECK(psi2_identity_residual(fr, q, pt->a0) < 1e-6);
  }
}
