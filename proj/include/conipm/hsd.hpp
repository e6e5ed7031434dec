#pragma once

#include "conipm/barrier.hpp"
#include "conipm/types.hpp"

namespace conipm {

/// Conic program data: min c'x s.t. Ax = b, x in K, with K a product of
/// primitive cones. A must have full row rank (m <= n).
struct ConicProblem {
  Matrix A;
  Vector b;
  Vector c;
  ConeSpec cone;

  int m() const { return static_cast<int>(A.rows()); }
  int n() const { return static_cast<int>(A.cols()); }

  void validate() const;  // throws ConfigurationError
};

/// Full iterate of the homogeneous self-dual model:
/// z = (xbar; y; sbar) with xbar = (x; tau) and sbar = (s; kappa).
struct HsdPoint {
  Vector xbar;
  Vector y;
  Vector sbar;

  int n() const { return static_cast<int>(xbar.size()) - 1; }
  Vector x() const { return xbar.head(n()); }
  double tau() const { return xbar[n()]; }
  Vector s() const { return sbar.head(n()); }
  double kappa() const { return sbar[n()]; }
};

/// Skew-symmetric system matrix of the homogeneous self-dual embedding, with
/// (y; x; tau) block layout:
///   [ 0    A  -b ]
///   [-A'   0   c ]
///   [ b'  -c'  0 ]
class GMatrix {
 public:
  GMatrix(const Matrix& A, const Vector& b, const Vector& c);

  const Matrix& matrix() const { return g_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int size() const { return m_ + n_ + 1; }

  Vector apply(const Vector& yx) const { return g_ * yx; }

 private:
  Matrix g_;
  int m_, n_;
};

GMatrix buildG(const ConicProblem& p);

/// Residual G(y; xbar) - (0; sbar) of the embedding; zero iff z is feasible
/// for the homogeneous model.
Vector linearResidual(const GMatrix& G, const HsdPoint& z);

/// Complementarity gap mu(z) = xbar' sbar / nubar.
double complementarityGap(const HsdPoint& z, double nubar);

/// Centrality residual sbar + t * gbar(xbar); vanishes on the central path at
/// t = mu(z), and is orthogonal to xbar there.
Vector centralityResidual(const Vector& xbar, const Vector& sbar, double t, const Barrier& fbar);

/// ||psi(xbar, sbar, mu(z))||*_xbar / mu(z). Returns +infinity when xbar is
/// not interior or mu(z) <= 0, so that line searches can probe trial points
/// without exception overhead.
double proximity(const HsdPoint& z, const Barrier& fbar);

/// z in N(theta): cone interiority plus proximity <= theta. A proximity below
/// one certifies sbar in the interior of the dual cone, so no dual membership
/// oracle is needed. The linear residual is deliberately not examined.
bool inNeighborhood(const HsdPoint& z, double theta, const Barrier& fbar);

}  // namespace conipm
