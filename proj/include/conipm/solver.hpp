#pragma once

#include <limits>
#include <string>
#include <vector>

#include "conipm/hsd.hpp"
#include "conipm/step.hpp"
#include "conipm/types.hpp"

namespace conipm {

/// Algorithm parameters. The two presets fix (beta, contraction, r_c) and the
/// fixed predictor step rule:
///   preset 1: beta = 0.20, contraction 0.50, r_c = 1, alpha_p = 0.020/kappa_x
///   preset 2: beta = 0.25, contraction 0.70, r_c = 2, alpha_p = 0.025/kappa_x
/// with eta = beta * contraction^{r_c} in both. alpha_c = 1 always.
struct SolverParams {
  int preset = 1;
  double eps = 1e-8;
  int max_iters = -1;  // < 0: defaults to 10x iterationBoundEstimate
  bool line_search = false;
  double tau_kappa_ratio_tol = 1e-6;
  KktMethod kkt = KktMethod::FullSystem;
  // Experimental: overrides the preset corrector count. The step analysis is
  // certified only for the preset values; no correctness claim otherwise.
  int rc_override = 0;

  void validate() const;
  double beta() const;
  double contraction() const;
  int correctorCount() const;
  double eta() const;  // beta * contraction^{r_c}
  double alphaC() const { return 1.0; }
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, IllPosed, IterationLimit };

std::string statusName(SolveStatus s);

struct IterationRecord {
  int iter;
  StepKind phase;
  double alpha;
  double mu;
  double residual_norm;
  double prox_before;
  double prox_after;
  double kappa_x;
  double wall_ms;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::IterationLimit;
  // Scaled solution (optimal) or certificate ray (infeasible); empty otherwise.
  Vector x, y, s;
  double primal_objective = std::numeric_limits<double>::quiet_NaN();
  double dual_objective = std::numeric_limits<double>::quiet_NaN();
  double final_mu = std::numeric_limits<double>::quiet_NaN();
  double final_residual_norm = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  std::vector<IterationRecord> trace;
  std::string detail;
};

/// Raised when an iterate numerically leaves the neighborhood the step
/// analysis guarantees. Carries the offending iterate; a diagnostic hook, not
/// an expected runtime event.
class PhaseInvariantError : public InvariantViolationError {
 public:
  PhaseInvariantError(const std::string& what, std::string phase, double prox, double bound,
                      HsdPoint z)
      : InvariantViolationError(what, std::move(phase), prox, bound), state(std::move(z)) {}
  HsdPoint state;
};

/// Canonical initial point: per-cone interior anchor with tau = 1, y = 0 and
/// sbar = -gbar(xbar), which has mu = 1 and proximity exactly 0.
HsdPoint initialPoint(const ConicProblem& p, const Barrier& fbar);

enum class TermDecision { Continue, Converged };

/// Relative-to-initial termination test: mu(z) <= eps mu(z0) and
/// ||residual(z)|| <= eps ||residual(z0)||; a zero initial residual makes the
/// residual test vacuous (it stays zero along the iteration).
TermDecision checkTermination(double mu, double mu0, double res_norm, double res0_norm, double eps);

/// tau/kappa classification at termination. tau dominant: rescale by 1/tau,
/// verify feasibility and gap, report optimal. kappa dominant: verify a Farkas
/// certificate (b'y > 0 with A'y + s = 0, s in K*, proving primal
/// infeasibility; or c'x < 0 with Ax = 0, x in K, proving dual
/// infeasibility). Anything that fails verification is reported ill-posed.
SolveOutcome classifySolution(const HsdPoint& z, const ConicProblem& p, const SolverParams& params,
                              double mu0, double res0_norm);

/// C * sqrt(nu) * log(1/eps) with C calibrated per preset; used to default
/// max_iters (with a 10x safety factor).
int iterationBoundEstimate(double nu, double eps, int preset);

SolveOutcome solve(const ConicProblem& p, const SolverParams& params);

}  // namespace conipm
