#pragma once

#include "conipm/barrier.hpp"
#include "conipm/hsd.hpp"
#include "conipm/types.hpp"

namespace conipm {

enum class StepKind { Predictor, Corrector };

/// How the step linear system is solved. FullSystem assembles the square
/// (m + 2n + 2) system and factorizes it with one round of iterative
/// refinement; Eliminated substitutes dsbar out of the barrier block first and
/// solves the (m + n + 1) system. The two must agree to solver precision and
/// serve as cross-checking oracles for each other.
enum class KktMethod { FullSystem, Eliminated };

struct StepDirection {
  Vector dxbar;
  Vector dy;
  Vector dsbar;
  StepKind kind;
};

/// Constants of the predictor analysis:
///   kappa_x = eta + sqrt(2 eta^2 + nubar),
///   kappa_s = kappa_x + sqrt(kappa_x^2 + eta^2 + nubar).
struct StepConstants {
  double kappa_x;
  double kappa_s;
  double eta;
  double nubar;
};

StepConstants stepConstants(double eta, double nubar);

/// Fixed predictor step length: 0.020 / kappa_x (preset 1) or
/// 0.025 / kappa_x (preset 2).
double fixedPredictorAlpha(int preset, const StepConstants& c);

/// Affine direction: solves
///   G(dy; dxbar) - (0; dsbar) = -(G(y; xbar) - (0; sbar)),
///   dsbar + mu(z) Hbar(xbar) dxbar = -sbar.
StepDirection predictorDirection(const GMatrix& G, const HsdPoint& z, const Barrier& fbar,
                                 KktMethod method = KktMethod::FullSystem);

/// Centering direction: solves
///   G(dy; dxbar) - (0; dsbar) = 0,
///   dsbar + mu(z) Hbar(xbar) dxbar = -psi(z);
/// every solution satisfies dxbar' dsbar = 0.
StepDirection correctorDirection(const GMatrix& G, const HsdPoint& z, const Barrier& fbar,
                                 KktMethod method = KktMethod::FullSystem);

/// Largest step on the backtracking grid {0.99/kappa_x * 0.9^k, k = 0..60}
/// that keeps z + alpha dz in N(beta), never less than fallback_alpha (the
/// preset's fixed step, which the analysis guarantees).
double lineSearchPredictor(const HsdPoint& z, const StepDirection& dz, double beta,
                           const Barrier& fbar, const StepConstants& c, double fallback_alpha);

HsdPoint applyStep(const HsdPoint& z, const StepDirection& dz, double alpha);

}  // namespace conipm
