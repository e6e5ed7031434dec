#include "conipm/step.hpp"

#include <cmath>

namespace conipm {

namespace {

constexpr double kRcondFloor = 1e-14;
constexpr double kSolveTol = 1e-10;

struct KktRhs {
  Vector top;     // rhs of the G-block, size m + n + 1
  Vector bottom;  // rhs of the barrier block, size n + 1
};

// LU with power-of-two row/column equilibration (exact scaling, no rounding).
// The barrier block mixes entries of size mu and 1/mu near convergence, so the
// raw matrix condition grows like 1/mu^2 while the equilibrated one stays
// proportional to 1/mu; the singularity gate applies to the equilibrated
// matrix.
class EquilibratedLu {
 public:
  explicit EquilibratedLu(Matrix mat) : m_(std::move(mat)) {
    const int n = static_cast<int>(m_.rows());
    row_ = Vector::Ones(n);
    col_ = Vector::Ones(n);
    for (int i = 0; i < n; ++i) {
      const double mx = m_.row(i).cwiseAbs().maxCoeff();
      if (mx > 0.0) row_[i] = std::exp2(-std::round(std::log2(mx)));
    }
    Matrix scaled = row_.asDiagonal() * m_;
    for (int j = 0; j < n; ++j) {
      const double mx = scaled.col(j).cwiseAbs().maxCoeff();
      if (mx > 0.0) col_[j] = std::exp2(-std::round(std::log2(mx)));
    }
    scaled = scaled * col_.asDiagonal();
    lu_.compute(scaled);
    if (lu_.rcond() < kRcondFloor) {
      throw ConditioningError("step: KKT system numerically singular (equilibrated rcond < 1e-14)");
    }
  }

  // solve with one round of iterative refinement against the true residual,
  // plus extra rounds only if the target residual is not yet met
  Vector solve(const Vector& r) const {
    Vector w = col_.asDiagonal() * lu_.solve(row_.asDiagonal() * r);
    w += col_.asDiagonal() * lu_.solve(row_.asDiagonal() * (r - m_ * w));
    const double scale =
        m_.cwiseAbs().rowwise().sum().maxCoeff() * w.cwiseAbs().maxCoeff() +
        r.cwiseAbs().maxCoeff() + 1.0;
    for (int extra = 0; extra < 2; ++extra) {
      if ((r - m_ * w).cwiseAbs().maxCoeff() <= kSolveTol * scale) return w;
      w += col_.asDiagonal() * lu_.solve(row_.asDiagonal() * (r - m_ * w));
    }
    if ((r - m_ * w).cwiseAbs().maxCoeff() > kSolveTol * scale) {
      throw ConditioningError("step: KKT solve did not reach the target residual");
    }
    return w;
  }

 private:
  Matrix m_;
  Vector row_, col_;
  Eigen::PartialPivLU<Matrix> lu_;
};

// Solves for (dy; dxbar; dsbar) given the two block right-hand sides.
//
// The solve runs in the locally scaled variables
//   dxt = sqrt(mu) L' dxbar,  dst = (1/sqrt(mu)) L^{-1} dsbar,  Hbar = L L',
// which turn the barrier block into dxt + dst = rhs and keep the assembled
// matrix condition proportional to 1/mu instead of 1/mu^2 (the barrier Hessian
// never appears squared). The inner products dxbar' dsbar = dxt' dst are
// preserved exactly.
StepDirection solveKkt(const GMatrix& G, const Matrix& hbar, double mu, const KktRhs& rhs,
                       StepKind kind, KktMethod method) {
  const int m = G.m();
  const int p = G.n() + 1;  // dim of xbar
  const int q = m + p;      // dim of (y; xbar)

  Eigen::LLT<Matrix> llt(hbar);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("step: barrier Hessian is numerically singular");
  }
  const double rmu = std::sqrt(mu);
  const Matrix lower = llt.matrixL();
  // Gx U^{-1} with U = L': transforms the xbar columns of G into dxt columns
  const Matrix gx_scaled =
      llt.matrixL().solve(G.matrix().rightCols(p).transpose()).transpose() / rmu;

  Vector dy(m), dxbar(p), dsbar(p);
  if (method == KktMethod::FullSystem) {
    const int sz = q + p;
    Matrix M = Matrix::Zero(sz, sz);
    M.block(0, 0, q, m) = G.matrix().leftCols(m);
    M.block(0, m, q, p) = gx_scaled;
    M.block(m, q, p, p) = -rmu * lower;
    M.block(q, m, p, p) = Matrix::Identity(p, p);
    M.block(q, q, p, p) = Matrix::Identity(p, p);
    Vector r(sz);
    r.head(q) = rhs.top;
    r.tail(p) = llt.matrixL().solve(rhs.bottom) / rmu;

    const EquilibratedLu lu(std::move(M));
    const Vector w = lu.solve(r);
    dy = w.head(m);
    dxbar = llt.matrixU().solve(w.segment(m, p)) / rmu;
    dsbar = rmu * (lower * w.tail(p));
  } else {
    // substitute dst = rhs - dxt into the G-block
    Matrix M(q, q);
    M.leftCols(m) = G.matrix().leftCols(m);
    M.rightCols(p) = gx_scaled;
    M.block(m, m, p, p) += rmu * lower;
    Vector r = rhs.top;
    r.tail(p) += rhs.bottom;

    const EquilibratedLu lu(std::move(M));
    const Vector w = lu.solve(r);
    dy = w.head(m);
    dxbar = llt.matrixU().solve(w.tail(p)) / rmu;
    dsbar = rhs.bottom - rmu * (lower * w.tail(p));
  }
  return StepDirection{std::move(dxbar), std::move(dy), std::move(dsbar), kind};
}

}  // namespace

StepConstants stepConstants(double eta, double nubar) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigurationError("stepConstants: eta must be in [0, 1]");
  if (!(nubar >= 2.0)) throw ConfigurationError("stepConstants: nubar must be >= 2");
  StepConstants c;
  c.eta = eta;
  c.nubar = nubar;
  c.kappa_x = eta + std::sqrt(2.0 * eta * eta + nubar);
  c.kappa_s = c.kappa_x + std::sqrt(c.kappa_x * c.kappa_x + eta * eta + nubar);
  return c;
}

double fixedPredictorAlpha(int preset, const StepConstants& c) {
  switch (preset) {
    case 1:
      return 0.020 / c.kappa_x;
    case 2:
      return 0.025 / c.kappa_x;
    default:
      throw ConfigurationError("fixedPredictorAlpha: unknown preset " + std::to_string(preset));
  }
}

StepDirection predictorDirection(const GMatrix& G, const HsdPoint& z, const Barrier& fbar,
                                 KktMethod method) {
  const double mu = complementarityGap(z, fbar.nu());
  KktRhs rhs;
  rhs.top = -linearResidual(G, z);
  rhs.bottom = -z.sbar;
  return solveKkt(G, fbar.hessian(z.xbar), mu, rhs, StepKind::Predictor, method);
}

StepDirection correctorDirection(const GMatrix& G, const HsdPoint& z, const Barrier& fbar,
                                 KktMethod method) {
  const double mu = complementarityGap(z, fbar.nu());
  KktRhs rhs;
  rhs.top = Vector::Zero(G.size());
  rhs.bottom = -centralityResidual(z.xbar, z.sbar, mu, fbar);
  return solveKkt(G, fbar.hessian(z.xbar), mu, rhs, StepKind::Corrector, method);
}

double lineSearchPredictor(const HsdPoint& z, const StepDirection& dz, double beta,
                           const Barrier& fbar, const StepConstants& c, double fallback_alpha) {
  double alpha = 0.99 / c.kappa_x;
  for (int k = 0; k <= 60; ++k, alpha *= 0.9) {
    if (alpha <= fallback_alpha) break;
    if (inNeighborhood(applyStep(z, dz, alpha), beta, fbar)) return alpha;
  }
  return fallback_alpha;
}

HsdPoint applyStep(const HsdPoint& z, const StepDirection& dz, double alpha) {
  return HsdPoint{z.xbar + alpha * dz.dxbar, z.y + alpha * dz.dy, z.sbar + alpha * dz.dsbar};
}

}  // namespace conipm
