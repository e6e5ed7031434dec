#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conipm/barrier.hpp"
#include "conipm/verifier.hpp"

using namespace conipm;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// central-difference gradient of F, the test-side oracle for the closed forms
Vector fdGradient(const Barrier& f, const Vector& x) {
  Vector g(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    const double h = 6e-6 * std::max(1.0, std::abs(x[i]));
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  return g;
}

Matrix fdHessian(const Barrier& f, const Vector& x) {
  Matrix h(f.dim(), f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    const double step = 6e-6 * std::max(1.0, std::abs(x[i]));
    Vector xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    h.col(i) = (f.gradient(xp) - f.gradient(xm)) / (2.0 * step);
  }
  return h;
}

}  // namespace

TEST_CASE("orthant barrier closed forms") {
  auto f = logBarrierOrthant(2);
  CHECK(f->dim() == 2);
  CHECK(f->nu() == 2.0);

  // identity case at the all-ones point
  CHECK((f->gradient(vec2(1, 1)) - vec2(-1, -1)).norm() == 0.0);
  CHECK((f->hessian(vec2(1, 1)) - Matrix::Identity(2, 2)).norm() == 0.0);

  // hand evaluation at x = (2, 4)
  CHECK(f->value(vec2(2, 4)) == doctest::Approx(-std::log(8.0)).epsilon(1e-14));
  CHECK(f->gradient(vec2(2, 4))[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(f->gradient(vec2(2, 4))[1] == doctest::Approx(-0.25).epsilon(1e-15));

  // ||g(x)||*_x = sqrt(2) everywhere
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    Vector x = vec2(std::exp(std::uniform_real_distribution<>(-1, 1)(rng)),
                    std::exp(std::uniform_real_distribution<>(-1, 1)(rng)));
    LocalMetric metric(*f, x);
    CHECK(metric.dualNorm(f->gradient(x)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)logBarrierOrthant(0), ConfigurationError);
  CHECK_FALSE(f->interior(vec2(1, 0)));
  CHECK_THROWS_AS((void)f->value(vec2(1, -1)), InteriorViolationError);
}

TEST_CASE("exponential cone barrier") {
  auto f = expConeBarrier();
  CHECK(f->dim() == 3);
  CHECK(f->nu() == 3.0);

  const double e = std::exp(1.0);
  // (e, 1, 1) has w = 0: boundary
  CHECK_FALSE(f->interior(vec3(e, 1, 1)));
  CHECK_THROWS_AS((void)f->value(vec3(e, 1, 1)), InteriorViolationError);

  // hand substitution: w(2e,1,1) = log 2, w(2e,1,0) = 1 + log 2
  CHECK(f->value(vec3(2 * e, 1, 1)) ==
        doctest::Approx(-std::log(std::log(2.0)) - std::log(2 * e)).epsilon(1e-14));
  CHECK(f->value(vec3(2 * e, 1, 0)) ==
        doctest::Approx(-std::log(1 + std::log(2.0)) - std::log(2 * e)).epsilon(1e-14));

  // closed-form gradient and Hessian against central differences
  for (const Vector& x : {vec3(2 * e, 1, 1), vec3(1.5, 0.5, -0.5), vec3(3.0, 2.0, 0.2)}) {
    REQUIRE(f->interior(x));
    CHECK((f->gradient(x) - fdGradient(*f, x)).norm() < 1e-6 * f->gradient(x).norm());
    CHECK((f->hessian(x) - fdHessian(*f, x)).norm() < 1e-5 * f->hessian(x).norm());
  }

  // ||g(x)||*_x = sqrt(3) on random interior points
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    std::uniform_real_distribution<> u(-0.7, 0.7);
    const double x2 = std::exp(u(rng));
    const double t = 1.5 * u(rng);
    const double w = std::exp(u(rng));
    Vector x = vec3(x2 * std::exp(t), x2, x2 * t - w);
    LocalMetric metric(*f, x);
    CHECK(metric.dualNorm(f->gradient(x)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
  }

  // dual cone membership agrees with -g(x) being dual-interior
  CHECK(f->inDualCone(-f->gradient(vec3(2 * e, 1, 1)), 0.0));
  CHECK_FALSE(f->inDualCone(vec3(1.0, 0.0, 1.0), 1e-9));  // s3 > 0 is never dual
}

TEST_CASE("product barrier composition") {
  CHECK_THROWS_AS((void)productBarrier({}), ConfigurationError);

  // nu adds: orthant(2) x exp has nu = 5
  auto prod = productBarrier({logBarrierOrthant(2), expConeBarrier()});
  CHECK(prod->nu() == 5.0);
  CHECK(prod->dim() == 5);

  // k orthant(1) blocks agree with orthant(k) exactly
  auto split = productBarrier({logBarrierOrthant(1), logBarrierOrthant(1), logBarrierOrthant(1)});
  auto whole = logBarrierOrthant(3);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 25; ++k) {
    Vector x(3);
    for (int i = 0; i < 3; ++i) x[i] = std::exp(std::uniform_real_distribution<>(-2, 2)(rng));
    CHECK(split->value(x) == whole->value(x));
    CHECK((split->gradient(x) - whole->gradient(x)).norm() == 0.0);
    CHECK((split->hessian(x) - whole->hessian(x)).norm() == 0.0);
  }

  // single part behaves identically to the part
  auto single = productBarrier({expConeBarrier()});
  auto plain = expConeBarrier();
  const Vector x = vec3(2.0, 1.0, -0.5);
  CHECK(single->value(x) == plain->value(x));
  CHECK((single->gradient(x) - plain->gradient(x)).norm() == 0.0);
}

TEST_CASE("homogenized barrier") {
  auto fbar = homogenize(logBarrierOrthant(2));
  CHECK(fbar->nu() == 3.0);
  CHECK(fbar->dim() == 3);
  CHECK((fbar->gradient(vec3(1, 1, 1)) - vec3(-1, -1, -1)).norm() == 0.0);
  CHECK((fbar->hessian(vec3(1, 1, 1)) - Matrix::Identity(3, 3)).norm() == 0.0);

  // agrees with orthant(n+1) on evaluations
  auto orth3 = logBarrierOrthant(3);
  const Vector x = vec3(0.3, 2.0, 1.7);
  CHECK(fbar->value(x) == orth3->value(x));
  CHECK((fbar->hessian(x) - orth3->hessian(x)).norm() == 0.0);

  // tau <= 0 is outside
  CHECK_FALSE(fbar->interior(vec3(1, 1, 0)));
  CHECK_THROWS_AS((void)fbar->gradient(vec3(1, 1, -2)), InteriorViolationError);
}

TEST_CASE("cone spec validation and barrier registry") {
  ConeSpec spec{{{ConeKind::NonnegativeOrthant, 2}, {ConeKind::ExponentialCone, 3}}};
  auto f = makeBarrier(spec);
  CHECK(f->dim() == 5);
  CHECK(f->nu() == 5.0);

  CHECK_THROWS_AS((void)makeBarrier(ConeSpec{}), ConfigurationError);
  CHECK_THROWS_AS((void)makeBarrier(ConeSpec{{{ConeKind::ExponentialCone, 2}}}), ConfigurationError);
  CHECK_THROWS_AS((void)makeBarrier(ConeSpec{{{ConeKind::NonnegativeOrthant, 0}}}), ConfigurationError);
}

TEST_CASE("local metric norms and solves") {
  auto f = logBarrierOrthant(2);

  LocalMetric unit(*f, vec2(1, 1));
  CHECK(unit.norm(vec2(3, 4)) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(unit.dualNorm(vec2(3, 4)) == doctest::Approx(5.0).epsilon(1e-14));

  // diag(1/4, 1) metric at x = (2, 1)
  LocalMetric skew(*f, vec2(2, 1));
  CHECK(skew.norm(vec2(2, 0)) == doctest::Approx(1.0).epsilon(1e-14));

  // ||x||_x = sqrt(nu)
  LocalMetric m2(*f, vec2(0.7, 5.1));
  CHECK(m2.norm(vec2(0.7, 5.1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  // dual norm identity ||u||*_x = ||H^{-1}u||_x and the solve itself
  const Vector u = vec2(0.3, -2.0);
  CHECK(skew.dualNorm(u) == doctest::Approx(skew.norm(skew.solve(u))).epsilon(1e-13));
  CHECK((skew.hessianMatrix() * skew.solve(u) - u).norm() < 1e-13);

  CHECK_THROWS_AS(LocalMetric(*f, vec2(-1, 1)), InteriorViolationError);
}

TEST_CASE("newton step equals the point for homogeneous barriers") {
  auto f = logBarrierOrthant(2);
  CHECK((newtonStep(*f, vec2(1, 1)) - vec2(1, 1)).norm() < 1e-14);
  CHECK((newtonStep(*f, vec2(2, 5)) - vec2(2, 5)).norm() < 1e-13);

  auto g = expConeBarrier();
  const Vector x = vec3(2.5, 1.2, 0.1);
  CHECK((newtonStep(*g, x) - x).norm() < 1e-8 * x.norm());
}

TEST_CASE("gradient inverse recovers the dual pairing") {
  auto f = logBarrierOrthant(2);
  CHECK((gradientInverse(*f, vec2(1, 1), 1e-12) - vec2(1, 1)).norm() < 1e-10);
  CHECK((gradientInverse(*f, vec2(2, 4), 1e-12) - vec2(0.5, 0.25)).norm() < 1e-10);

  auto g = expConeBarrier();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    std::uniform_real_distribution<> u(-0.6, 0.6);
    const double x2 = std::exp(u(rng));
    const double t = u(rng);
    Vector x0 = vec3(x2 * std::exp(t), x2, x2 * t - std::exp(u(rng)));
    const Vector back = gradientInverse(*g, -g->gradient(x0), 1e-9);
    CHECK((back - x0).norm() < 1e-6 * x0.norm());
  }

  CHECK_THROWS_AS((void)gradientInverse(*f, vec2(1, 1), -1.0), ConfigurationError);
  CHECK_THROWS_AS((void)gradientInverse(*f, vec2(100, 100), 1e-14, 2), NoConvergenceError);
}

TEST_CASE("barrier property sweeps") {
  SweepOptions opts;
  opts.samples = 120;
  const std::vector<std::pair<std::string, BarrierPtr>> families = {
      {"orthant3", logBarrierOrthant(3)},
      {"expcone", expConeBarrier()},
      {"product", productBarrier({logBarrierOrthant(2), expConeBarrier()})},
  };
  for (const auto& [tag, f] : families) {
    CAPTURE(tag);
    for (const auto& r : checkFiniteDifferences(*f, tag, opts)) {
      CAPTURE(r.id);
      CHECK(r.pass);
    }
    for (const auto& r : checkLogHomogeneity(*f, tag, opts)) {
      CAPTURE(r.id);
      CHECK(r.pass);
    }
    const CheckReport sc = checkSelfConcordanceRatio(*f, tag, opts);
    CAPTURE(sc.instance);
    CHECK(sc.pass);
  }
}
