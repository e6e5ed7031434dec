#include "conipm/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conipm/step.hpp"

namespace conipm {

namespace {

constexpr double kDefaultRelSlack = 1e-9;

// Tracks the worst sample of one inequality family across a sweep.
class Worst {
 public:
  explicit Worst(std::string id, double rel_slack = kDefaultRelSlack)
      : id_(std::move(id)), rel_slack_(rel_slack) {}

  void update(double lhs, double rhs, const std::string& instance) {
    const double tol = rel_slack_ * std::max(1.0, std::abs(rhs));
    if (lhs > rhs + tol) fail_ = true;
    const double margin = (lhs - rhs) / std::max(1.0, std::abs(rhs));
    if (!seen_ || margin > worst_margin_) {
      seen_ = true;
      worst_margin_ = margin;
      lhs_ = lhs;
      rhs_ = rhs;
      instance_ = instance;
    }
  }

  void updateFlag(bool ok, const std::string& instance) {
    update(ok ? 0.0 : 1.0, 0.0, instance);
  }

  CheckReport report() const {
    return CheckReport{id_, instance_, lhs_, rhs_, rel_slack_, !fail_};
  }

 private:
  std::string id_;
  double rel_slack_;
  bool seen_ = false;
  bool fail_ = false;
  double worst_margin_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  std::string instance_;
};

std::uint64_t mixSeed(std::uint64_t seed, const std::string& tag) {
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

int uniformInt(std::mt19937_64& rng, int a, int b) {
  return std::uniform_int_distribution<int>(a, b)(rng);
}

Vector normalVec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

// Unit direction in the local norm at x: d with ||d||_x = 1.
Vector dikinDirection(const LocalMetric& metric, std::mt19937_64& rng) {
  const Vector xi = normalVec(rng, static_cast<int>(metric.center().size()));
  Vector d = metric.factorization().matrixU().solve(xi);  // L^{-T} xi
  return d / xi.norm();
}

// Random interior point reached by a short Dikin-ball walk from the anchor.
// Works for any self-concordant barrier; each step stays inside the cone.
Vector dikinWalk(const Barrier& f, std::mt19937_64& rng, int steps = 4, double radius = 0.75) {
  Vector x = f.interiorPoint();
  for (int k = 0; k < steps; ++k) {
    LocalMetric metric(f, x);
    const Vector d = dikinDirection(metric, rng);
    double t = uniform(rng, 0.0, radius);
    Vector next = x + t * d;
    while (!f.interior(next) && t > 1e-12) {
      t *= 0.5;
      next = x + t * d;
    }
    if (f.interior(next)) x = std::move(next);
  }
  return x;
}

std::string sampleTag(const std::string& tag, int k, const char* extra = "") {
  std::ostringstream os;
  os << tag << " sample " << k;
  if (*extra) os << " (" << extra << ")";
  return os.str();
}

// L^{-1} H(u) L^{-T}: symmetric, similar to H(x)^{-1} H(u); its eigenvalues
// give all four operator norms of the self-concordance bounds.
Matrix metricSimilarity(const LocalMetric& mx, const Matrix& hu) {
  Matrix t = mx.factorization().matrixL().solve(hu);
  Matrix m = mx.factorization().matrixL().solve(t.transpose());
  return 0.5 * (m + m.transpose());
}

}  // namespace

double predictorProximityBound(double cp, double eta) {
  const double r2 = std::numbers::sqrt2;
  return cp / ((1.0 - cp) * (1.0 - cp)) +
         (2.0 * eta * (r2 + cp) + 4.0 * (1.0 + r2) * cp) /
             ((1.0 - cp) * (r2 - cp) * (2.0 - cp * eta));
}

double correctorProximityBound(double theta, double alpha_c) {
  const double r2 = std::numbers::sqrt2;
  const double at = alpha_c * theta;
  const double ratio = at / (1.0 - at);
  return (2.0 * ratio * ratio + 4.0 * (1.0 - alpha_c) * theta / (1.0 - at) +
          r2 * alpha_c * theta * theta) /
         (2.0 - alpha_c * theta * theta);
}

CheckReport checkSelfConcordanceRatio(const Barrier& f, const std::string& tag,
                                      const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "sc.ratio" + tag));
  Worst worst("selfconcordance.ratio." + tag);
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    LocalMetric mx(f, x);
    const Vector u = x + uniform(rng, 0.01, 0.9) * dikinDirection(mx, rng);
    const double d = mx.norm(u - x);
    LocalMetric mu_metric(f, u);
    const Vector v = normalVec(rng, f.dim());
    const double ratio = mu_metric.norm(v) / mx.norm(v);
    worst.update(1.0 - d, ratio, sampleTag(tag, k, "lower"));
    worst.update(ratio, 1.0 / (1.0 - d), sampleTag(tag, k, "upper"));
  }
  return worst.report();
}

CheckReport checkHessianOperatorBounds(const Barrier& f, const std::string& tag,
                                       const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "sc.hess" + tag));
  Worst worst("selfconcordance.hessian_operator." + tag);
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    LocalMetric mx(f, x);
    const Vector u = x + uniform(rng, 0.01, 0.9) * dikinDirection(mx, rng);
    const double d = mx.norm(u - x);
    const Matrix m = metricSimilarity(mx, f.hessian(u));
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const Vector& ev = es.eigenvalues();
    const double bound = 1.0 / ((1.0 - d) * (1.0 - d));
    worst.update(ev.maxCoeff(), bound, sampleTag(tag, k, "H(x)^-1 H(u)"));
    worst.update(1.0 / ev.minCoeff(), bound, sampleTag(tag, k, "H(u)^-1 H(x)"));
    double dev_fwd = 0.0, dev_bwd = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
      dev_fwd = std::max(dev_fwd, std::abs(1.0 - ev[i]));
      dev_bwd = std::max(dev_bwd, std::abs(1.0 - 1.0 / ev[i]));
    }
    worst.update(dev_fwd, bound - 1.0, sampleTag(tag, k, "I - H(x)^-1 H(u)"));
    worst.update(dev_bwd, bound - 1.0, sampleTag(tag, k, "I - H(u)^-1 H(x)"));
  }
  return worst.report();
}

CheckReport checkDampedNewton(const Barrier& f, const std::string& tag, const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "sc.newton" + tag));
  Worst worst("selfconcordance.damped_newton." + tag);
  const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    LocalMetric mx(f, x);
    // f(v) = c'v + F(v) with c = -g(x0) for a nearby x0, so the Newton step
    // n(x) = -H(x)^{-1}(c + g(x)) is nonzero and ||n(x)||_x < 1
    const Vector x0 = x + uniform(rng, 0.05, 0.4) * dikinDirection(mx, rng);
    const Vector c = -f.gradient(x0);
    const Vector n = mx.solve(-(c + f.gradient(x)));
    const double delta = mx.norm(n);
    for (double a : alphas) {
      if (a * delta >= 1.0) continue;
      const Vector xp = x + a * n;
      if (!f.interior(xp)) continue;  // cannot happen for a*delta < 1, fp guard
      LocalMetric mp(f, xp);
      const double lhs = mp.dualNorm(c + f.gradient(xp));  // = ||n(x+)||_{x+}
      const double ad = a * delta;
      const double rhs = (ad / (1.0 - ad)) * (ad / (1.0 - ad)) + (1.0 - a) * delta / (1.0 - ad);
      std::ostringstream e;
      e << "alpha=" << a;
      worst.update(lhs, rhs, sampleTag(tag, k, e.str().c_str()));
    }
  }
  return worst.report();
}

CheckReport checkDualNormChange(const Barrier& f, const std::string& tag, const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "sc.dual" + tag));
  Worst worst("selfconcordance.dual_norm_change." + tag);
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    LocalMetric mx(f, x);
    const Vector u = x + uniform(rng, 0.01, 0.9) * dikinDirection(mx, rng);
    const double d = mx.norm(u - x);
    LocalMetric mu_metric(f, u);
    const Vector v = normalVec(rng, f.dim());
    worst.update(mu_metric.dualNorm(v) / mx.dualNorm(v), 1.0 / (1.0 - d), sampleTag(tag, k));
  }
  return worst.report();
}

CheckReport checkGradientBound(const Barrier& f, const std::string& tag, const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "sc.grad" + tag));
  Worst worst("selfconcordance.gradient_bound." + tag);
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    LocalMetric mx(f, x);
    const Vector u = x + uniform(rng, 0.01, 0.9) * dikinDirection(mx, rng);
    const double d = mx.norm(u - x);
    worst.update(mx.dualNorm(f.gradient(u) - f.gradient(x)), d / (1.0 - d), sampleTag(tag, k));
  }
  return worst.report();
}

std::vector<CheckReport> checkLogHomogeneity(const Barrier& f, const std::string& tag,
                                             const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "lh" + tag));
  Worst grad_id("barrier.gradient_identity." + tag, 0.0);
  Worst nu_id("barrier.nu_identity." + tag, 0.0);
  Worst scaling("barrier.log_homogeneity." + tag, 0.0);
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    LocalMetric mx(f, x);
    const Vector g = f.gradient(x);
    // H(x) x = -g(x)
    grad_id.update((mx.hessianMatrix() * x + g).norm(), 1e-9 * g.norm(), sampleTag(tag, k));
    // (||g(x)||*_x)^2 = nu and ||x||_x = sqrt(nu)
    const double gd = mx.dualNorm(g);
    nu_id.update(std::abs(gd * gd - f.nu()), 1e-8 * f.nu(), sampleTag(tag, k, "dual norm"));
    const double xn = mx.norm(x);
    nu_id.update(std::abs(xn * xn - f.nu()), 1e-8 * f.nu(), sampleTag(tag, k, "primal norm"));
    // F(tx) = F(x) - nu log t
    const double t = uniform(rng, 0.1, 10.0);
    scaling.update(std::abs(f.value(t * x) - f.value(x) + f.nu() * std::log(t)), 1e-9,
                   sampleTag(tag, k));
  }
  return {grad_id.report(), nu_id.report(), scaling.report()};
}

std::vector<CheckReport> checkConjugacy(const Barrier& f, const std::string& tag,
                                        const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "conj" + tag));
  Worst round_trip("conjugacy.round_trip." + tag, 0.0);
  Worst dual_norm("conjugacy.dual_norm." + tag, 0.0);
  Worst nu_id("conjugacy.nu_identity." + tag, 0.0);
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x0 = dikinWalk(f, rng);
    const Vector s = -f.gradient(x0);
    const Vector xr = gradientInverse(f, s, 1e-9);
    // -g*( -g(x0) ) = x0
    round_trip.update((xr - x0).norm() / std::max(1.0, x0.norm()), 1e-6, sampleTag(tag, k));
    // ||u||*_s computed through H*(s) = H(x)^{-1} agrees with ||u||*_x0
    LocalMetric m0(f, x0);
    LocalMetric mr(f, xr);
    const Vector u = normalVec(rng, f.dim());
    const double d0 = m0.dualNorm(u);
    dual_norm.update(std::abs(mr.dualNorm(u) - d0) / std::max(1e-30, d0), 1e-6, sampleTag(tag, k));
    // the conjugate barrier has the same parameter: ||g*(s)|| in its own
    // local norm equals sqrt(nu), i.e. ||x||_x at the recovered point
    nu_id.update(std::abs(mr.norm(xr) - std::sqrt(f.nu())), 1e-6 * std::sqrt(f.nu()),
                 sampleTag(tag, k));
  }
  return {round_trip.report(), dual_norm.report(), nu_id.report()};
}

std::vector<CheckReport> checkFiniteDifferences(const Barrier& f, const std::string& tag,
                                                const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "fd" + tag));
  Worst grad_fd("barrier.fd_gradient." + tag, 0.0);
  Worst hess_fd("barrier.fd_hessian." + tag, 0.0);
  const int n = f.dim();
  for (int k = 0; k < opts.samples; ++k) {
    const Vector x = dikinWalk(f, rng);
    const Vector g = f.gradient(x);
    const Matrix h = f.hessian(x);
    Vector gfd(n);
    Matrix hfd(n, n);
    for (int i = 0; i < n; ++i) {
      const double step = 6e-6 * std::max(1.0, std::abs(x[i]));
      Vector xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      gfd[i] = (f.value(xp) - f.value(xm)) / (2.0 * step);
      hfd.col(i) = (f.gradient(xp) - f.gradient(xm)) / (2.0 * step);
    }
    grad_fd.update((gfd - g).norm() / g.norm(), 1e-5, sampleTag(tag, k));
    hess_fd.update((hfd - h).norm() / h.norm(), 1e-4, sampleTag(tag, k));
  }
  return {grad_fd.report(), hess_fd.report()};
}

ConicProblem sampleProblem(std::mt19937_64& rng, int max_n, int max_m, bool with_exp) {
  for (;;) {
    ConeSpec spec;
    int n = 0;
    const int target = uniformInt(rng, 2, std::max(2, max_n));
    if (with_exp && target >= 3 && uniformInt(rng, 0, 1) == 1) {
      spec.cones.push_back({ConeKind::ExponentialCone, 3});
      n += 3;
    }
    if (n < target) {
      spec.cones.push_back({ConeKind::NonnegativeOrthant, target - n});
      n = target;
    }
    const int m = uniformInt(rng, 1, std::min(max_m, n));
    ConicProblem p;
    p.A = Matrix::NullaryExpr(m, n, [&rng](Eigen::Index, Eigen::Index) {
      return std::normal_distribution<double>(0.0, 1.0)(rng);
    });
    p.b = normalVec(rng, m);
    p.c = normalVec(rng, n);
    p.cone = spec;
    try {
      p.validate();
      return p;
    } catch (const ConfigurationError&) {
      // rank-deficient draw; try again
    }
  }
}

namespace {

// Interior point of the product cone, by primitive kind.
Vector sampleConeInterior(const ConeSpec& spec, std::mt19937_64& rng) {
  Vector x(spec.totalDim());
  int at = 0;
  for (const auto& cone : spec.cones) {
    if (cone.kind == ConeKind::NonnegativeOrthant) {
      for (int i = 0; i < cone.dim; ++i) x[at + i] = std::exp(uniform(rng, -0.7, 0.7));
    } else {
      const double x2 = std::exp(uniform(rng, -0.7, 0.7));
      const double t = uniform(rng, -1.5, 1.5);
      const double w = std::exp(uniform(rng, -0.7, 0.7));
      x[at] = x2 * std::exp(t);
      x[at + 1] = x2;
      x[at + 2] = x2 * t - w;
    }
    at += cone.dim;
  }
  return x;
}

}  // namespace

HsdPoint samplePointInNeighborhood(const ConicProblem& p, const Barrier& fbar, double theta_target,
                                   std::mt19937_64& rng) {
  const int n = p.n();
  const double nubar = fbar.nu();
  for (int attempt = 0; attempt < 64; ++attempt) {
    HsdPoint z;
    z.xbar = Vector(n + 1);
    z.xbar.head(n) = sampleConeInterior(p.cone, rng);
    z.xbar[n] = std::exp(uniform(rng, -0.3, 0.3));
    z.y = normalVec(rng, p.m());

    const double mu_hat = std::exp(uniform(rng, -0.3, 0.3));
    const Vector gbar = fbar.gradient(z.xbar);
    LocalMetric metric(fbar, z.xbar);
    // noise with H^{1/2} scaling, then rescaled to land the proximity in
    // [theta/2, theta]
    const Vector noise = metric.factorization().matrixL() * normalVec(rng, n + 1);
    const double qdot = noise.dot(z.xbar) / nubar;
    const double pnorm = metric.dualNorm(noise + qdot * gbar);
    const double target = theta_target * uniform(rng, 0.5, 1.0);
    const double denom = pnorm - target * qdot;
    if (denom <= 1e-12) continue;
    const double t = target * mu_hat / denom;
    z.sbar = -mu_hat * gbar + t * noise;

    const double prox = proximity(z, fbar);
    if (prox <= theta_target && prox >= 0.4 * theta_target && prox < 1.0) return z;
  }
  throw NoConvergenceError("samplePointInNeighborhood: could not hit the proximity target");
}

std::vector<CheckReport> checkPredictorBounds(const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "predictor"));
  Worst dx_bound("predictor.dx_bound");
  Worst ds_bound("predictor.ds_bound");
  Worst res_id("predictor.residual_identity", 0.0);
  Worst mu_id("predictor.mu_identity", 0.0);
  Worst mu_diff("predictor.mu_diff_bound");
  Worst mu_ratio("predictor.mu_ratio");
  Worst interiority("predictor.interiority", 0.0);
  Worst corrected("predictor.corrected_bound");
  const double etas[] = {0.10, 0.1225};
  const double fracs[] = {0.1, 0.3, 0.5, 0.7, 0.9};  // c_p = alpha_p kappa_x
  for (int k = 0; k < opts.samples; ++k) {
    const double eta = etas[k % 2];
    const ConicProblem prob = sampleProblem(rng, 8, 4, true);
    const BarrierPtr fbar = homogenize(makeBarrier(prob.cone));
    const GMatrix G(prob.A, prob.b, prob.c);
    const double nubar = fbar->nu();
    const StepConstants sc = stepConstants(eta, nubar);
    const HsdPoint z = samplePointInNeighborhood(prob, *fbar, eta, rng);
    const double mu = complementarityGap(z, nubar);
    const StepDirection dz = predictorDirection(G, z, *fbar);
    LocalMetric metric(*fbar, z.xbar);
    std::ostringstream ios;
    ios << "n=" << prob.n() << " m=" << prob.m() << " eta=" << eta;
    const std::string inst = sampleTag("instance", k, ios.str().c_str());

    dx_bound.update(metric.norm(dz.dxbar), sc.kappa_x, inst);
    ds_bound.update(metric.dualNorm(dz.dsbar), sc.kappa_s * mu, inst);

    const Vector res = linearResidual(G, z);
    const Vector psi = centralityResidual(z.xbar, z.sbar, mu, *fbar);
    for (const double cp : fracs) {
      const double ap = cp / sc.kappa_x;
      const HsdPoint zp = applyStep(z, dz, ap);
      const double mup = complementarityGap(zp, nubar);
      res_id.update((linearResidual(G, zp) - (1.0 - ap) * res).norm() / std::max(1.0, res.norm()),
                    1e-10, inst);
      const double mu_model = (1.0 - ap) * (mu + ap * psi.dot(dz.dxbar) / nubar);
      mu_id.update(std::abs(mup - mu_model) / mu, 1e-10, inst);
      mu_diff.update(std::abs(mup - mu), mu * ap * (1.0 + (1.0 - ap) * eta * sc.kappa_x / nubar),
                     inst);
      mu_ratio.update((1.0 - ap) * (1.0 - ap * eta * sc.kappa_x / nubar), mup / mu, inst);
      mu_ratio.update(mup / mu, (1.0 - ap) * (1.0 + ap * eta * sc.kappa_x / nubar), inst);
      const bool x_interior = fbar->interior(zp.xbar);
      interiority.updateFlag(x_interior, inst + " primal");
      if (x_interior) {
        const double proxp = proximity(zp, *fbar);
        if (proxp <= 0.99) {
          interiority.updateFlag(fbar->inDualCone(zp.sbar, 0.0), inst + " dual");
        }
        corrected.update(proxp, predictorProximityBound(cp, eta), inst);
      }
    }
  }
  Worst preset1("predictor.preset1_bound", 0.0);
  preset1.update(predictorProximityBound(0.020, 0.10), 0.20, "preset 1 constants");
  Worst preset2("predictor.preset2_bound", 0.0);
  preset2.update(predictorProximityBound(0.025, 0.1225), 0.25, "preset 2 constants");
  return {dx_bound.report(), ds_bound.report(), res_id.report(),      mu_id.report(),
          mu_diff.report(),  mu_ratio.report(), interiority.report(), corrected.report(),
          preset1.report(),  preset2.report()};
}

std::vector<CheckReport> checkCorrectorBounds(const SweepOptions& opts) {
  std::mt19937_64 rng(mixSeed(opts.seed, "corrector"));
  Worst ortho("corrector.orthogonality", 0.0);
  Worst dx_bound("corrector.dx_bound");
  Worst ds_bound("corrector.ds_bound");
  Worst psi_step("corrector.psi_step_bound");
  Worst res_id("corrector.residual_identity", 0.0);
  Worst mu_id("corrector.mu_identity", 0.0);
  Worst mu_diff("corrector.mu_diff_bound");
  Worst mu_ratio("corrector.mu_ratio");
  Worst interiority("corrector.interiority", 0.0);
  Worst corrected("corrector.corrected_bound");
  const double thetas[] = {0.20, 0.25, 0.30};
  const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int k = 0; k < opts.samples; ++k) {
    const double theta = thetas[k % 3];
    const ConicProblem prob = sampleProblem(rng, 8, 4, true);
    const BarrierPtr fbar = homogenize(makeBarrier(prob.cone));
    const GMatrix G(prob.A, prob.b, prob.c);
    const double nubar = fbar->nu();
    const HsdPoint z = samplePointInNeighborhood(prob, *fbar, theta, rng);
    const double mu = complementarityGap(z, nubar);
    const StepDirection dz = correctorDirection(G, z, *fbar);
    LocalMetric metric(*fbar, z.xbar);
    std::ostringstream ios;
    ios << "n=" << prob.n() << " m=" << prob.m() << " theta=" << theta;
    const std::string inst = sampleTag("instance", k, ios.str().c_str());

    const double dxn = metric.norm(dz.dxbar);
    ortho.update(std::abs(dz.dxbar.dot(dz.dsbar)) /
                     std::max(1e-300, dz.dxbar.norm() * dz.dsbar.norm()),
                 1e-10, inst);
    dx_bound.update(dxn, theta, inst);
    ds_bound.update(metric.dualNorm(dz.dsbar), theta * mu, inst);

    const Vector res = linearResidual(G, z);
    const Vector psi = centralityResidual(z.xbar, z.sbar, mu, *fbar);
    const double res_scale = std::max(1.0, res.norm());
    for (const double ac : alphas) {
      psi_step.update(metric.dualNorm(psi + ac * dz.dsbar), theta * mu, inst);
      const HsdPoint zp = applyStep(z, dz, ac);
      const double mup = complementarityGap(zp, nubar);
      res_id.update((linearResidual(G, zp) - res).cwiseAbs().maxCoeff() / res_scale, 1e-12, inst);
      mu_id.update(std::abs(mup - mu * (1.0 - ac * dxn * dxn / nubar)) / mu, 1e-10, inst);
      mu_diff.update(std::abs(mup - mu), ac * theta * theta * mu / nubar, inst);
      mu_ratio.update(1.0 - ac * theta * theta / nubar, mup / mu, inst);
      mu_ratio.update(mup / mu, 1.0, inst);
      const bool x_interior = fbar->interior(zp.xbar);
      interiority.updateFlag(x_interior, inst + " primal");
      interiority.updateFlag(fbar->inDualCone(zp.sbar, 0.0), inst + " dual");
      if (x_interior) {
        corrected.update(proximity(zp, *fbar), correctorProximityBound(theta, ac), inst);
      }
    }
  }
  Worst preset1("corrector.preset1_bound", 0.0);
  preset1.update(correctorProximityBound(0.20, 1.0), 0.10, "preset 1 constants");
  Worst preset2("corrector.preset2_bound", 0.0);
  preset2.update(correctorProximityBound(0.25, 1.0), 0.175, "preset 2 constants");
  return {ortho.report(),   dx_bound.report(), ds_bound.report(),    psi_step.report(),
          res_id.report(),  mu_id.report(),    mu_diff.report(),     mu_ratio.report(),
          interiority.report(), corrected.report(), preset1.report(), preset2.report()};
}

std::vector<CheckReport> checkPhaseInvariants(int preset, const SweepOptions& opts) {
  if (preset != 1 && preset != 2) throw ConfigurationError("checkPhaseInvariants: unknown preset");
  const double beta = preset == 1 ? 0.20 : 0.25;
  const double contraction = preset == 1 ? 0.50 : 0.70;
  const int rc = preset;
  const double eta = beta * std::pow(contraction, rc);
  const std::string p = "phase.preset" + std::to_string(preset);
  std::mt19937_64 rng(mixSeed(opts.seed, p));
  Worst pred(p + ".predictor_in_beta");
  Worst corr(p + ".corrector_in_eta");
  Worst contr(p + ".corrector_contraction");
  for (int k = 0; k < opts.samples; ++k) {
    const ConicProblem prob = sampleProblem(rng, 8, 4, true);
    const BarrierPtr fbar = homogenize(makeBarrier(prob.cone));
    const GMatrix G(prob.A, prob.b, prob.c);
    const StepConstants sc = stepConstants(eta, fbar->nu());
    const double ap = fixedPredictorAlpha(preset, sc);
    HsdPoint z = samplePointInNeighborhood(prob, *fbar, eta, rng);
    std::ostringstream ios;
    ios << "n=" << prob.n() << " m=" << prob.m();
    const std::string inst = sampleTag("instance", k, ios.str().c_str());

    z = applyStep(z, predictorDirection(G, z, *fbar), ap);
    pred.update(proximity(z, *fbar), beta, inst);
    double level = beta;
    for (int j = 0; j < rc; ++j) {
      z = applyStep(z, correctorDirection(G, z, *fbar), 1.0);
      level *= contraction;
      contr.update(proximity(z, *fbar), level, inst);
    }
    corr.update(proximity(z, *fbar), eta, inst);
  }
  return {pred.report(), corr.report(), contr.report()};
}

CounterexampleFixture counterexampleFixture() {
  CounterexampleFixture f;
  Matrix A(1, 2);
  A << 5.0, -3.0;
  Vector b(1), c(2);
  b << 12.0;
  c << 2.0, 3.0;
  f.problem = ConicProblem{A, b, c, ConeSpec{{{ConeKind::NonnegativeOrthant, 2}}}};
  f.predictor_point.xbar = Vector(3);
  f.predictor_point.xbar << 0.9310, 0.6995, 0.8511;
  f.predictor_point.y = Vector(1);
  f.predictor_point.y << 0.0224;
  f.predictor_point.sbar = Vector(3);
  f.predictor_point.sbar << 0.8246, 1.0891, 0.9023;
  f.corrector_point.xbar = Vector(3);
  f.corrector_point.xbar << 0.9830, 0.9304, 0.9670;
  f.corrector_point.y = Vector(1);
  f.corrector_point.y << 0.0042;
  f.corrector_point.sbar = Vector(3);
  f.corrector_point.sbar << 0.9650, 1.0176, 0.9810;
  return f;
}

namespace {

struct UncorrectedBoundSides {
  double q;        // mu(z+)^{-1} ||sbar+ + mu(z+) gbar(xbar)||*_xbar, old point
  double claimed;  // mu(z+) q^2 / (1-q)^2
  double actual;   // ||psi(z+)||*_{xbar+}
};

UncorrectedBoundSides uncorrectedBound(const HsdPoint& z, const HsdPoint& zp, const Barrier& fbar) {
  UncorrectedBoundSides r;
  const double mup = complementarityGap(zp, fbar.nu());
  LocalMetric old_metric(fbar, z.xbar);
  r.q = old_metric.dualNorm(zp.sbar + mup * fbar.gradient(z.xbar)) / mup;
  r.claimed = mup * r.q * r.q / ((1.0 - r.q) * (1.0 - r.q));
  LocalMetric new_metric(fbar, zp.xbar);
  r.actual = new_metric.dualNorm(zp.sbar + mup * fbar.gradient(zp.xbar));
  return r;
}

CheckReport boundCheck(const std::string& id, const std::string& inst, double lhs, double rhs,
                       double slack = 0.0) {
  return CheckReport{id, inst, lhs, rhs, slack, lhs <= rhs + slack};
}

// Passes when the claimed bound is strictly exceeded by the actual value.
CheckReport violationCheck(const std::string& id, const std::string& inst, double claimed,
                           double actual) {
  return CheckReport{id, inst, claimed, actual, 0.0, claimed < actual};
}

}  // namespace

std::vector<CheckReport> reproduceCounterexamples() {
  const CounterexampleFixture fx = counterexampleFixture();
  const BarrierPtr fbar = homogenize(makeBarrier(fx.problem.cone));
  const GMatrix G(fx.problem.A, fx.problem.b, fx.problem.c);
  const double nubar = fbar->nu();
  const StepConstants sc = stepConstants(fx.eta, nubar);

  std::vector<CheckReport> out;
  out.push_back(boundCheck("counterexample.predictor_point_in_neighborhood", "printed iterate",
                           proximity(fx.predictor_point, *fbar), fx.eta));
  out.push_back(boundCheck("counterexample.corrector_point_in_neighborhood", "printed iterate",
                           proximity(fx.corrector_point, *fbar), fx.beta));
  out.push_back(boundCheck("counterexample.alpha_p_vs_inv_kappa_x", "step-size condition",
                           fx.alpha_p, 1.0 / sc.kappa_x));
  out.push_back(boundCheck("counterexample.alpha_p_vs_feasibility_cap", "step-size condition",
                           fx.alpha_p, (1.0 - fx.eta) / sc.kappa_s));
  out.push_back(boundCheck("counterexample.alpha_p_vs_inv_11_sqrt_nubar", "step-size condition",
                           fx.alpha_p, 1.0 / (11.0 * std::sqrt(nubar))));

  {
    const HsdPoint& z = fx.predictor_point;
    const StepDirection dz = predictorDirection(G, z, *fbar);
    const HsdPoint zp = applyStep(z, dz, fx.alpha_p);
    const auto sides = uncorrectedBound(z, zp, *fbar);
    out.push_back(boundCheck("counterexample.predictor_q_below_one", "q value", sides.q, 1.0));
    out.push_back(violationCheck("counterexample.predictor_uncorrected_bound_violated",
                                 "claimed bound vs actual", sides.claimed, sides.actual));
    out.push_back(boundCheck("counterexample.predictor_corrected_bound_holds", "corrected bound",
                             proximity(zp, *fbar),
                             predictorProximityBound(fx.alpha_p * sc.kappa_x, fx.eta)));
  }
  {
    const HsdPoint& z = fx.corrector_point;
    const StepDirection dz = correctorDirection(G, z, *fbar);
    const HsdPoint zp = applyStep(z, dz, fx.alpha_c);
    const auto sides = uncorrectedBound(z, zp, *fbar);
    out.push_back(boundCheck("counterexample.corrector_q_below_one", "q value", sides.q, 1.0));
    out.push_back(violationCheck("counterexample.corrector_uncorrected_bound_violated",
                                 "claimed bound vs actual", sides.claimed, sides.actual));
    out.push_back(boundCheck("counterexample.corrector_corrected_bound_holds", "corrected bound",
                             proximity(zp, *fbar), correctorProximityBound(fx.beta, fx.alpha_c)));
  }
  return out;
}

std::vector<CheckReport> runSuite(const std::string& suite, const SweepOptions& opts) {
  std::vector<CheckReport> out;
  auto append = [&out](std::vector<CheckReport> r) {
    out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  };
  if (suite == "selfconcordance" || suite == "all") {
    const std::vector<std::pair<std::string, BarrierPtr>> families = {
        {"orthant2", logBarrierOrthant(2)},
        {"orthant5", logBarrierOrthant(5)},
        {"expcone", expConeBarrier()},
        {"product", productBarrier({logBarrierOrthant(2), expConeBarrier()})},
    };
    for (const auto& [tag, f] : families) {
      out.push_back(checkSelfConcordanceRatio(*f, tag, opts));
      out.push_back(checkHessianOperatorBounds(*f, tag, opts));
      out.push_back(checkDampedNewton(*f, tag, opts));
      out.push_back(checkDualNormChange(*f, tag, opts));
      out.push_back(checkGradientBound(*f, tag, opts));
      append(checkLogHomogeneity(*f, tag, opts));
      append(checkConjugacy(*f, tag, opts));
      append(checkFiniteDifferences(*f, tag, opts));
    }
  }
  if (suite == "predictor" || suite == "all") {
    append(checkPredictorBounds(opts));
    append(checkPhaseInvariants(1, opts));
    append(checkPhaseInvariants(2, opts));
  }
  if (suite == "corrector" || suite == "all") {
    append(checkCorrectorBounds(opts));
  }
  if (suite == "counterexamples" || suite == "all") {
    append(reproduceCounterexamples());
  }
  if (out.empty()) throw ConfigurationError("unknown verify suite: " + suite);
  return out;
}

std::vector<std::string> suiteNames() {
  return {"selfconcordance", "predictor", "corrector", "counterexamples", "all"};
}

}  // namespace conipm
