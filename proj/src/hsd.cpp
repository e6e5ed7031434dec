#include "conipm/hsd.hpp"

#include <cmath>
#include <limits>

namespace conipm {

void ConicProblem::validate() const {
  cone.validate();
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  if (b.size() != rows) throw ConfigurationError("problem: b has size " + std::to_string(b.size()) + ", expected m = " + std::to_string(rows));
  if (c.size() != cols) throw ConfigurationError("problem: c has size " + std::to_string(c.size()) + ", expected n = " + std::to_string(cols));
  if (cone.totalDim() != cols) {
    throw ConfigurationError("problem: cone dims sum to " + std::to_string(cone.totalDim()) + ", expected n = " + std::to_string(cols));
  }
  if (rows > cols) throw ConfigurationError("problem: m > n");
  if (rows > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(A);
    if (qr.rank() < rows) throw ConfigurationError("problem: A does not have full row rank");
  }
}

GMatrix::GMatrix(const Matrix& A, const Vector& b, const Vector& c)
    : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())) {
  if (b.size() != m_ || c.size() != n_) throw ConfigurationError("G matrix: inconsistent dimensions");
  const int sz = m_ + n_ + 1;
  g_ = Matrix::Zero(sz, sz);
  g_.block(0, m_, m_, n_) = A;
  g_.block(0, m_ + n_, m_, 1) = -b;
  g_.block(m_, 0, n_, m_) = -A.transpose();
  g_.block(m_, m_ + n_, n_, 1) = c;
  g_.block(m_ + n_, 0, 1, m_) = b.transpose();
  g_.block(m_ + n_, m_, 1, n_) = -c.transpose();
  // skew-symmetry is exact by construction
}

GMatrix buildG(const ConicProblem& p) {
  p.validate();
  return GMatrix(p.A, p.b, p.c);
}

Vector linearResidual(const GMatrix& G, const HsdPoint& z) {
  const int m = G.m();
  const int p = G.n() + 1;
  if (z.xbar.size() != p || z.y.size() != m || z.sbar.size() != p) {
    throw ConfigurationError("linearResidual: point does not match G");
  }
  Vector yx(m + p);
  yx.head(m) = z.y;
  yx.tail(p) = z.xbar;
  Vector r = G.apply(yx);
  r.tail(p) -= z.sbar;
  return r;
}

double complementarityGap(const HsdPoint& z, double nubar) {
  return z.xbar.dot(z.sbar) / nubar;
}

Vector centralityResidual(const Vector& xbar, const Vector& sbar, double t, const Barrier& fbar) {
  return sbar + t * fbar.gradient(xbar);
}

double proximity(const HsdPoint& z, const Barrier& fbar) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!fbar.interior(z.xbar)) return inf;
  const double mu = complementarityGap(z, fbar.nu());
  if (!(mu > 0.0)) return inf;
  LocalMetric metric(fbar, z.xbar);
  const Vector psi = z.sbar + mu * fbar.gradient(z.xbar);
  return metric.dualNorm(psi) / mu;
}

bool inNeighborhood(const HsdPoint& z, double theta, const Barrier& fbar) {
  const double prox = proximity(z, fbar);
  // prox < 1 certifies sbar in the dual interior via self-concordance of the
  // conjugate barrier; N(theta) is only used with theta < 1.
  return prox <= theta && prox < 1.0;
}

}  // namespace conipm
