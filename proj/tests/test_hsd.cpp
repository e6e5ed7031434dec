#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conipm/hsd.hpp"
#include "conipm/verifier.hpp"

using namespace conipm;

namespace {

ConicProblem fixtureLp() { return counterexampleFixture().problem; }

// brute-force proximity through an explicit Hessian inverse, independent of
// the factorization path used by proximity()
double proximityBrute(const HsdPoint& z, const Barrier& fbar) {
  const double mu = complementarityGap(z, fbar.nu());
  const Vector psi = z.sbar + mu * fbar.gradient(z.xbar);
  const Matrix hinv = fbar.hessian(z.xbar).inverse();
  return std::sqrt(psi.dot(hinv * psi)) / mu;
}

}  // namespace

TEST_CASE("problem validation") {
  ConicProblem p = fixtureLp();
  CHECK(p.m() == 1);
  CHECK(p.n() == 2);
  CHECK_NOTHROW(p.validate());

  SUBCASE("dimension mismatches are rejected") {
    ConicProblem bad = p;
    bad.b = Vector::Zero(2);
    CHECK_THROWS_AS(bad.validate(), ConfigurationError);
    bad = p;
    bad.cone.cones[0].dim = 3;
    CHECK_THROWS_AS(bad.validate(), ConfigurationError);
  }
  SUBCASE("rank-deficient rows are rejected") {
    ConicProblem bad;
    bad.A = Matrix(2, 2);
    bad.A << 1, 1, 2, 2;
    bad.b = Vector::Zero(2);
    bad.c = Vector::Ones(2);
    bad.cone = ConeSpec{{{ConeKind::NonnegativeOrthant, 2}}};
    CHECK_THROWS_AS(bad.validate(), ConfigurationError);
  }
  SUBCASE("m = 0 is allowed") {
    ConicProblem free;
    free.A = Matrix(0, 2);
    free.b = Vector(0);
    free.c = Vector::Ones(2);
    free.cone = ConeSpec{{{ConeKind::NonnegativeOrthant, 2}}};
    CHECK_NOTHROW(free.validate());
  }
}

TEST_CASE("G matrix layout") {
  const GMatrix g = buildG(fixtureLp());
  CHECK(g.size() == 4);

  Vector row0(4);
  row0 << 0, 5, -3, -12;
  CHECK((g.matrix().row(0).transpose() - row0).norm() == 0.0);

  // skew-symmetry is exact
  CHECK((g.matrix() + g.matrix().transpose()).norm() == 0.0);

  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const ConicProblem p = sampleProblem(rng, 9, 5, true);
    const GMatrix gr = buildG(p);
    CHECK((gr.matrix() + gr.matrix().transpose()).norm() == 0.0);
    // the skew form vanishes on every vector
    Vector v = Vector::Random(gr.size());
    CHECK(std::abs(v.dot(gr.apply(v))) < 1e-12 * v.squaredNorm() * gr.matrix().norm());
  }

  SUBCASE("m = 0 reduces to [0 c; -c' 0]") {
    ConicProblem p;
    p.A = Matrix(0, 2);
    p.b = Vector(0);
    p.c = Vector(2);
    p.c << 2, 3;
    p.cone = ConeSpec{{{ConeKind::NonnegativeOrthant, 2}}};
    const GMatrix g0 = buildG(p);
    Matrix expect(3, 3);
    expect << 0, 0, 2, 0, 0, 3, -2, -3, 0;
    CHECK((g0.matrix() - expect).norm() == 0.0);
  }
}

TEST_CASE("linear residual") {
  const GMatrix g = buildG(fixtureLp());

  SUBCASE("exactly feasible point has zero residual") {
    // x = (3, 1), tau = 1 satisfies Ax = b tau; sbar picked to match G(y;xbar)
    HsdPoint z;
    z.xbar = Vector(3);
    z.xbar << 3, 1, 1;
    z.y = Vector(1);
    z.y << 0.25;
    Vector yx(4);
    yx << z.y[0], 3, 1, 1;
    const Vector gyx = g.apply(yx);
    REQUIRE(gyx[0] == 0.0);
    z.sbar = gyx.tail(3);
    CHECK(linearResidual(g, z).norm() == 0.0);
  }

  SUBCASE("printed predictor iterate, hand-computed rows") {
    const HsdPoint z = counterexampleFixture().predictor_point;
    const Vector r = linearResidual(g, z);
    REQUIRE(r.size() == 4);
    CHECK(r[0] == doctest::Approx(-7.6567).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(0.7656).epsilon(1e-12));
    CHECK(r[2] == doctest::Approx(1.5314).epsilon(1e-12));
    CHECK(r[3] == doctest::Approx(-4.594).epsilon(1e-12));
  }

  SUBCASE("residual is linear in z") {
    HsdPoint z = counterexampleFixture().predictor_point;
    const Vector r = linearResidual(g, z);
    HsdPoint scaled{2.5 * z.xbar, 2.5 * z.y, 2.5 * z.sbar};
    CHECK((linearResidual(g, scaled) - 2.5 * r).norm() < 1e-14);
  }
}

TEST_CASE("complementarity gap") {
  HsdPoint ones;
  ones.xbar = Vector::Ones(4);
  ones.y = Vector::Zero(2);
  ones.sbar = Vector::Ones(4);
  CHECK(complementarityGap(ones, 4.0) == 1.0);

  const CounterexampleFixture fx = counterexampleFixture();
  CHECK(complementarityGap(fx.predictor_point, 3.0) ==
        doctest::Approx(0.765825193333333333).epsilon(1e-14));
  CHECK(complementarityGap(fx.corrector_point, 3.0) ==
        doctest::Approx(0.947999013333333333).epsilon(1e-14));
}

TEST_CASE("centrality residual and its orthogonality") {
  auto fbar = homogenize(makeBarrier(fixtureLp().cone));

  SUBCASE("central point gives zero") {
    Vector xbar(3);
    xbar << 0.4, 2.0, 1.3;
    const double mu = 0.7;
    const Vector sbar = -mu * fbar->gradient(xbar);
    CHECK(centralityResidual(xbar, sbar, mu, *fbar).norm() == 0.0);
  }

  SUBCASE("psi' xbar = 0 at t = mu(z) on random interior points") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 200; ++k) {
      const ConicProblem p = sampleProblem(rng, 8, 4, true);
      auto fb = homogenize(makeBarrier(p.cone));
      const HsdPoint z = samplePointInNeighborhood(p, *fb, 0.5, rng);
      const double mu = complementarityGap(z, fb->nu());
      const Vector psi = centralityResidual(z.xbar, z.sbar, mu, *fb);
      CHECK(std::abs(psi.dot(z.xbar)) <= 1e-10 * fb->nu() * mu);
    }
  }

  SUBCASE("printed iterate stays within the eta ball") {
    const CounterexampleFixture fx = counterexampleFixture();
    const double mu = complementarityGap(fx.predictor_point, 3.0);
    const Vector psi = centralityResidual(fx.predictor_point.xbar, fx.predictor_point.sbar, mu, *fbar);
    LocalMetric metric(*fbar, fx.predictor_point.xbar);
    CHECK(metric.dualNorm(psi) <= 0.15 * mu);
  }
}

TEST_CASE("proximity and neighborhood membership") {
  auto fbar = homogenize(makeBarrier(fixtureLp().cone));
  const CounterexampleFixture fx = counterexampleFixture();

  SUBCASE("central point has proximity zero") {
    HsdPoint z;
    z.xbar = Vector(3);
    z.xbar << 1.5, 0.5, 1.0;
    z.y = Vector::Zero(1);
    // sbar = -gbar makes mu = sum(x_i / x_i) / nubar = 1 exactly, so psi = 0 bitwise
    z.sbar = -fbar->gradient(z.xbar);
    CHECK(proximity(z, *fbar) == 0.0);
    CHECK(inNeighborhood(z, 0.0, *fbar));
    // a scaled central point is zero only up to roundoff
    z.sbar = -0.9 * fbar->gradient(z.xbar);
    CHECK(proximity(z, *fbar) < 1e-14);
  }

  SUBCASE("printed iterates match the stated neighborhoods") {
    CHECK(proximity(fx.predictor_point, *fbar) <= 0.15);
    CHECK(inNeighborhood(fx.predictor_point, 0.15, *fbar));
    CHECK(proximity(fx.corrector_point, *fbar) <= 0.30);
    CHECK(inNeighborhood(fx.corrector_point, 0.30, *fbar));
  }

  SUBCASE("agrees with a brute-force dual norm") {
    CHECK(proximity(fx.predictor_point, *fbar) ==
          doctest::Approx(proximityBrute(fx.predictor_point, *fbar)).epsilon(1e-12));
    CHECK(proximity(fx.corrector_point, *fbar) ==
          doctest::Approx(proximityBrute(fx.corrector_point, *fbar)).epsilon(1e-12));
  }

  SUBCASE("boundary and degenerate points") {
    HsdPoint z = fx.predictor_point;
    z.xbar[1] = 0.0;  // on the cone boundary
    CHECK(std::isinf(proximity(z, *fbar)));
    CHECK_FALSE(inNeighborhood(z, 0.15, *fbar));

    HsdPoint neg = fx.predictor_point;
    neg.sbar = -neg.sbar;  // mu < 0
    CHECK(std::isinf(proximity(neg, *fbar)));
    CHECK_FALSE(inNeighborhood(neg, 0.9, *fbar));
  }

  SUBCASE("replacing sbar with the central value zeroes the proximity") {
    HsdPoint z = fx.predictor_point;
    const double mu = complementarityGap(z, 3.0);
    z.sbar = -mu * fbar->gradient(z.xbar);
    CHECK(proximity(z, *fbar) < 1e-14);
  }
}
