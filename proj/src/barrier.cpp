#include "conipm/barrier.hpp"

#include <cmath>
#include <utility>

namespace conipm {

void Barrier::requireDim(const Vector& x) const {
  if (x.size() != dim()) {
    throw ConfigurationError("barrier: vector of size " + std::to_string(x.size()) +
                             " passed to a cone of dimension " + std::to_string(dim()));
  }
}

void Barrier::requireInterior(const Vector& x) const {
  if (!interior(x)) throw InteriorViolationError("barrier: point is not strictly interior");
}

namespace {

class OrthantBarrier final : public Barrier {
 public:
  explicit OrthantBarrier(int n) : n_(n) {}

  int dim() const override { return n_; }
  double nu() const override { return static_cast<double>(n_); }

  bool interior(const Vector& x) const override {
    if (x.size() != n_) return false;
    for (int i = 0; i < n_; ++i) {
      if (!(x[i] > kInteriorMargin)) return false;
    }
    return true;
  }

  double value(const Vector& x) const override {
    requireDim(x);
    requireInterior(x);
    double f = 0.0;
    for (int i = 0; i < n_; ++i) f -= std::log(x[i]);
    return f;
  }

  Vector gradient(const Vector& x) const override {
    requireDim(x);
    requireInterior(x);
    return -x.cwiseInverse();
  }

  Matrix hessian(const Vector& x) const override {
    requireDim(x);
    requireInterior(x);
    return x.cwiseAbs2().cwiseInverse().asDiagonal();
  }

  Vector interiorPoint() const override { return Vector::Ones(n_); }

  bool inCone(const Vector& x, double tol) const override {
    return x.size() == n_ && x.minCoeff() >= -tol;
  }

  // The orthant is self-dual.
  bool inDualCone(const Vector& s, double tol) const override { return inCone(s, tol); }

 private:
  int n_;
};

class ExpConeBarrier final : public Barrier {
 public:
  int dim() const override { return 3; }
  double nu() const override { return 3.0; }

  // residual of the defining inequality: w = x2*log(x1/x2) - x3 > 0 inside
  static double residualW(const Vector& x) { return x[1] * std::log(x[0] / x[1]) - x[2]; }

  bool interior(const Vector& x) const override {
    if (x.size() != 3) return false;
    if (!(x[0] > kInteriorMargin) || !(x[1] > kInteriorMargin)) return false;
    return residualW(x) > kInteriorMargin;
  }

  double value(const Vector& x) const override {
    requireDim(x);
    requireInterior(x);
    return -std::log(residualW(x)) - std::log(x[0]) - std::log(x[1]);
  }

  Vector gradient(const Vector& x) const override {
    requireDim(x);
    requireInterior(x);
    const double w = residualW(x);
    const double l = std::log(x[0] / x[1]);
    Vector gw(3);  // gradient of w
    gw << x[1] / x[0], l - 1.0, -1.0;
    Vector g = -gw / w;
    g[0] -= 1.0 / x[0];
    g[1] -= 1.0 / x[1];
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    requireDim(x);
    requireInterior(x);
    const double w = residualW(x);
    const double l = std::log(x[0] / x[1]);
    Vector gw(3);
    gw << x[1] / x[0], l - 1.0, -1.0;
    Matrix hw = Matrix::Zero(3, 3);  // Hessian of w
    hw(0, 0) = -x[1] / (x[0] * x[0]);
    hw(0, 1) = hw(1, 0) = 1.0 / x[0];
    hw(1, 1) = -1.0 / x[1];
    Matrix h = gw * gw.transpose() / (w * w) - hw / w;
    h(0, 0) += 1.0 / (x[0] * x[0]);
    h(1, 1) += 1.0 / (x[1] * x[1]);
    return h;
  }

  Vector interiorPoint() const override {
    Vector x(3);
    x << std::exp(1.0), 1.0, 0.0;  // w = 1
    return x;
  }

  bool inCone(const Vector& x, double tol) const override {
    if (x.size() != 3) return false;
    if (x[1] <= tol) {
      // x2 -> 0 slice of the closure: { x1 >= 0, x3 <= 0 }
      return x[1] >= -tol && x[0] >= -tol && x[2] <= tol;
    }
    if (x[0] <= 0.0) return false;
    const double scale = std::max({1.0, std::abs(x[2]), x[1]});
    return residualW(x) >= -tol * scale;
  }

  bool inDualCone(const Vector& s, double tol) const override {
    if (s.size() != 3) return false;
    if (s[0] < -tol || s[2] > tol) return false;
    if (s[0] <= tol) {
      // s1 -> 0 forces s3 -> 0
      return s[2] >= -tol && s[1] >= -tol;
    }
    if (-s[2] <= tol) return s[1] >= -tol;
    // min_t { s1 e^t + s3 t + s2 } = s2 - s3 + s3 log(-s3/s1) must be >= 0
    const double scale = std::max({1.0, std::abs(s[1]), -s[2]});
    return s[1] - s[2] + s[2] * std::log(-s[2] / s[0]) >= -tol * scale;
  }
};

class ProductBarrier final : public Barrier {
 public:
  explicit ProductBarrier(std::vector<BarrierPtr> parts) : parts_(std::move(parts)) {
    offsets_.reserve(parts_.size() + 1);
    offsets_.push_back(0);
    nu_ = 0.0;
    for (const auto& p : parts_) {
      offsets_.push_back(offsets_.back() + p->dim());
      nu_ += p->nu();
    }
  }

  int dim() const override { return offsets_.back(); }
  double nu() const override { return nu_; }

  bool interior(const Vector& x) const override {
    if (x.size() != dim()) return false;
    for (size_t k = 0; k < parts_.size(); ++k) {
      if (!parts_[k]->interior(block(x, k))) return false;
    }
    return true;
  }

  double value(const Vector& x) const override {
    requireDim(x);
    double f = 0.0;
    for (size_t k = 0; k < parts_.size(); ++k) f += parts_[k]->value(block(x, k));
    return f;
  }

  Vector gradient(const Vector& x) const override {
    requireDim(x);
    Vector g(dim());
    for (size_t k = 0; k < parts_.size(); ++k) {
      g.segment(offsets_[k], parts_[k]->dim()) = parts_[k]->gradient(block(x, k));
    }
    return g;
  }

  Matrix hessian(const Vector& x) const override {
    requireDim(x);
    Matrix h = Matrix::Zero(dim(), dim());
    for (size_t k = 0; k < parts_.size(); ++k) {
      const int d = parts_[k]->dim();
      h.block(offsets_[k], offsets_[k], d, d) = parts_[k]->hessian(block(x, k));
    }
    return h;
  }

  Vector interiorPoint() const override {
    Vector x(dim());
    for (size_t k = 0; k < parts_.size(); ++k) {
      x.segment(offsets_[k], parts_[k]->dim()) = parts_[k]->interiorPoint();
    }
    return x;
  }

  bool inCone(const Vector& x, double tol) const override {
    if (x.size() != dim()) return false;
    for (size_t k = 0; k < parts_.size(); ++k) {
      if (!parts_[k]->inCone(block(x, k), tol)) return false;
    }
    return true;
  }

  bool inDualCone(const Vector& s, double tol) const override {
    if (s.size() != dim()) return false;
    for (size_t k = 0; k < parts_.size(); ++k) {
      if (!parts_[k]->inDualCone(block(s, k), tol)) return false;
    }
    return true;
  }

 private:
  Vector block(const Vector& x, size_t k) const {
    return x.segment(offsets_[k], parts_[k]->dim());
  }

  std::vector<BarrierPtr> parts_;
  std::vector<int> offsets_;
  double nu_;
};

}  // namespace

BarrierPtr logBarrierOrthant(int n) {
  if (n < 1) throw ConfigurationError("orthant barrier requires n >= 1");
  return std::make_shared<OrthantBarrier>(n);
}

BarrierPtr expConeBarrier() { return std::make_shared<ExpConeBarrier>(); }

BarrierPtr productBarrier(std::vector<BarrierPtr> parts) {
  if (parts.empty()) throw ConfigurationError("product barrier requires at least one part");
  for (const auto& p : parts) {
    if (!p) throw ConfigurationError("product barrier: null part");
  }
  return std::make_shared<ProductBarrier>(std::move(parts));
}

BarrierPtr homogenize(BarrierPtr f) {
  if (!f) throw ConfigurationError("homogenize: null barrier");
  return productBarrier({std::move(f), logBarrierOrthant(1)});
}

int ConeSpec::totalDim() const {
  int n = 0;
  for (const auto& c : cones) n += c.dim;
  return n;
}

void ConeSpec::validate() const {
  if (cones.empty()) throw ConfigurationError("cone spec: empty cone list");
  for (const auto& c : cones) {
    switch (c.kind) {
      case ConeKind::NonnegativeOrthant:
        if (c.dim < 1) throw ConfigurationError("cone spec: nonneg cone needs dim >= 1");
        break;
      case ConeKind::ExponentialCone:
        if (c.dim != 3) throw ConfigurationError("cone spec: exp cone has dim 3");
        break;
    }
  }
}

BarrierPtr makeBarrier(const ConeSpec& spec) {
  spec.validate();
  std::vector<BarrierPtr> parts;
  parts.reserve(spec.cones.size());
  for (const auto& c : spec.cones) {
    switch (c.kind) {
      case ConeKind::NonnegativeOrthant:
        parts.push_back(logBarrierOrthant(c.dim));
        break;
      case ConeKind::ExponentialCone:
        parts.push_back(expConeBarrier());
        break;
    }
  }
  return productBarrier(std::move(parts));
}

LocalMetric::LocalMetric(const Barrier& f, Vector x) : x_(std::move(x)) {
  hess_ = f.hessian(x_);  // throws if x is not interior
  llt_.compute(hess_);
  if (llt_.info() != Eigen::Success) {
    throw ConditioningError("local metric: Hessian is numerically singular");
  }
}

double LocalMetric::norm(const Vector& u) const { return (llt_.matrixU() * u).norm(); }

double LocalMetric::dualNorm(const Vector& u) const { return llt_.matrixL().solve(u).norm(); }

Vector LocalMetric::solve(const Vector& u) const { return llt_.solve(u); }

Vector newtonStep(const Barrier& f, const Vector& x) {
  LocalMetric metric(f, x);
  return metric.solve(-f.gradient(x));
}

Vector gradientInverse(const Barrier& f, const Vector& s, double tol, int max_iters) {
  if (!(tol > 0.0)) throw ConfigurationError("gradientInverse: tol must be positive");
  Vector x = f.interiorPoint();
  for (int it = 0; it < max_iters; ++it) {
    LocalMetric metric(f, x);
    const Vector step = metric.solve(-(s + f.gradient(x)));
    const double decrement = metric.norm(step);  // = ||g(x) + s||*_x
    if (decrement <= tol) return x;
    double t = decrement <= 0.25 ? 1.0 : 1.0 / (1.0 + decrement);
    Vector next = x + t * step;
    while (!f.interior(next)) {
      t *= 0.5;
      if (t < 1e-18) {
        throw NoConvergenceError("gradientInverse: step collapsed; s is likely near the dual boundary");
      }
      next = x + t * step;
    }
    x = std::move(next);
  }
  throw NoConvergenceError("gradientInverse: no convergence within iteration cap");
}

}  // namespace conipm
