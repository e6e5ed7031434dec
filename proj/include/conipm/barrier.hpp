#pragma once

#include <memory>
#include <vector>

#include "conipm/types.hpp"

namespace conipm {

// Margin used by the strict interior tests: the defining expressions of the
// cone (coordinates, exponential-cone residual, ...) must exceed this value.
inline constexpr double kInteriorMargin = 1e-12;

/// Oracle for a logarithmically homogeneous self-concordant barrier F of a
/// proper cone K: evaluates F, its gradient g and Hessian H on the interior,
/// and carries the barrier parameter nu.
///
/// Oracles are immutable after construction and safe to evaluate concurrently.
class Barrier {
 public:
  virtual ~Barrier() = default;

  virtual int dim() const = 0;
  virtual double nu() const = 0;

  /// Strict interior membership of the cone.
  virtual bool interior(const Vector& x) const = 0;

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Matrix hessian(const Vector& x) const = 0;

  /// Canonical strictly interior anchor point, used for initialization.
  virtual Vector interiorPoint() const = 0;

  /// Membership in the closed cone within tolerance tol. Used when verifying
  /// recovered solutions, which may sit on the boundary.
  virtual bool inCone(const Vector& x, double tol) const = 0;

  /// Membership in the closed dual cone within tolerance tol. Used only for
  /// certificate verification; the algorithm itself never needs a dual oracle.
  virtual bool inDualCone(const Vector& s, double tol) const = 0;

 protected:
  void requireDim(const Vector& x) const;
  void requireInterior(const Vector& x) const;
};

using BarrierPtr = std::shared_ptr<const Barrier>;

/// F(x) = -sum_i log x_i on the nonnegative orthant of dimension n; nu = n.
BarrierPtr logBarrierOrthant(int n);

/// Barrier with nu = 3 for the exponential cone
///   cl{ x in R^3 : x1 >= x2 * exp(x3 / x2), x1, x2 > 0 },
/// F(x) = -log(x2 * log(x1/x2) - x3) - log x1 - log x2.
BarrierPtr expConeBarrier();

/// Block-diagonal composition; F is the sum over blocks and nu adds.
BarrierPtr productBarrier(std::vector<BarrierPtr> parts);

/// Barrier for K x R+ on (x; tau): F(x) - log tau, with parameter nu + 1.
BarrierPtr homogenize(BarrierPtr f);

enum class ConeKind { NonnegativeOrthant, ExponentialCone };

struct PrimitiveCone {
  ConeKind kind;
  int dim;
};

// Ordered list of primitive cones describing the product cone of a problem.
struct ConeSpec {
  std::vector<PrimitiveCone> cones;

  int totalDim() const;
  void validate() const;  // throws ConfigurationError
};

BarrierPtr makeBarrier(const ConeSpec& spec);

/// Local metric at an interior point x: factorization of H(x) shared by the
/// norm ||u||_x, the dual norm ||u||*_x and the solve H(x)^{-1} u.
/// Immutable after construction.
class LocalMetric {
 public:
  LocalMetric(const Barrier& f, Vector x);

  double norm(const Vector& u) const;      // ||u||_x
  double dualNorm(const Vector& u) const;  // ||u||*_x = ||H(x)^{-1} u||_x
  Vector solve(const Vector& u) const;     // H(x)^{-1} u

  const Vector& center() const { return x_; }
  const Matrix& hessianMatrix() const { return hess_; }
  const Eigen::LLT<Matrix>& factorization() const { return llt_; }

 private:
  Vector x_;
  Matrix hess_;
  Eigen::LLT<Matrix> llt_;
};

/// Newton step n(x) = -H(x)^{-1} g(x); equals x for logarithmically
/// homogeneous barriers.
Vector newtonStep(const Barrier& f, const Vector& x);

/// Inverts the gradient map: given s strictly inside the dual cone, returns
/// the x with -g(x) = s (i.e. -g*(s)), by damped Newton minimization of
/// <x,s> + F(x). Stops when ||g(x) + s||*_x <= tol; throws NoConvergenceError
/// when the iteration cap is hit, which signals s near the dual boundary.
Vector gradientInverse(const Barrier& f, const Vector& s, double tol, int max_iters = 200);

}  // namespace conipm
