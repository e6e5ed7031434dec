#include "conipm/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace conipm {

namespace {

constexpr double kInvariantSlack = 1e-9;

double elapsedMs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void SolverParams::validate() const {
  if (preset != 1 && preset != 2) throw ConfigurationError("params: preset must be 1 or 2");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigurationError("params: eps must be in (0, 1)");
  if (!(tau_kappa_ratio_tol > 0.0)) throw ConfigurationError("params: tau_kappa_ratio_tol must be positive");
  if (rc_override < 0) throw ConfigurationError("params: rc_override must be >= 0");
}

double SolverParams::beta() const { return preset == 1 ? 0.20 : 0.25; }

double SolverParams::contraction() const { return preset == 1 ? 0.50 : 0.70; }

int SolverParams::correctorCount() const {
  if (rc_override > 0) return rc_override;
  return preset == 1 ? 1 : 2;
}

double SolverParams::eta() const { return beta() * std::pow(contraction(), correctorCount()); }

std::string statusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal-infeasible";
    case SolveStatus::DualInfeasible: return "dual-infeasible";
    case SolveStatus::IllPosed: return "ill-posed";
    case SolveStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

HsdPoint initialPoint(const ConicProblem& p, const Barrier& fbar) {
  HsdPoint z;
  z.xbar = fbar.interiorPoint();  // per-cone anchor, tau = 1
  z.y = Vector::Zero(p.m());
  z.sbar = -fbar.gradient(z.xbar);
  return z;
}

TermDecision checkTermination(double mu, double mu0, double res_norm, double res0_norm, double eps) {
  const bool mu_ok = mu <= eps * mu0;
  const bool res_ok = res0_norm == 0.0 || res_norm <= eps * res0_norm;
  return (mu_ok && res_ok) ? TermDecision::Converged : TermDecision::Continue;
}

int iterationBoundEstimate(double nu, double eps, int preset) {
  if (preset != 1 && preset != 2) throw ConfigurationError("iterationBoundEstimate: unknown preset");
  if (!(nu >= 1.0)) throw ConfigurationError("iterationBoundEstimate: nu must be >= 1");
  if (!(eps > 0.0)) throw ConfigurationError("iterationBoundEstimate: eps must be positive");
  if (eps >= 1.0) return 0;
  const double c = preset == 1 ? 10.0 : 8.0;
  return static_cast<int>(std::ceil(c * std::sqrt(nu) * std::log(1.0 / eps)));
}

SolveOutcome classifySolution(const HsdPoint& z, const ConicProblem& p, const SolverParams& params,
                              double mu0, double res0_norm) {
  BarrierPtr cone = makeBarrier(p.cone);
  const double nubar = cone->nu() + 1.0;
  const double tau = z.tau();
  const double kappa = z.kappa();
  const double ratio_tol = params.tau_kappa_ratio_tol;
  const double eps = params.eps;

  SolveOutcome out;
  out.final_mu = complementarityGap(z, nubar);

  if (tau >= ratio_tol * std::max(1.0, kappa)) {
    Vector x = z.x() / tau;
    Vector y = z.y / tau;
    Vector s = z.s() / tau;
    const double pobj = p.c.dot(x);
    const double dobj = p.b.dot(y);
    const double pfeas = p.m() > 0 ? (p.A * x - p.b).norm() : 0.0;
    const double dfeas = (p.A.transpose() * y + s - p.c).norm();
    const double gap = std::abs(pobj - dobj);
    // budgets from the termination thresholds: the scaled residuals are at
    // most eps ||res0|| / tau and the scaled gap at most
    // (nubar eps mu0 + eps ||res0||) / tau, up to a safety factor
    const double feas_budget = std::max(1e-9, 100.0 * eps * std::max(1.0, res0_norm) / tau);
    const double gap_budget =
        std::max(1e-9, 100.0 * (eps * std::max(1.0, res0_norm) + nubar * eps * mu0 / tau) / tau);
    const double cone_tol =
        1e-7 * (1.0 + x.cwiseAbs().maxCoeff() + s.cwiseAbs().maxCoeff()) + feas_budget;
    std::ostringstream diag;
    diag << "pfeas=" << pfeas / (1.0 + p.b.norm()) << " dfeas=" << dfeas / (1.0 + p.c.norm())
         << " gap=" << gap / (1.0 + std::abs(pobj) + std::abs(dobj));
    if (pfeas <= feas_budget && dfeas <= feas_budget && gap <= gap_budget &&
        cone->inCone(x, cone_tol) && cone->inDualCone(s, cone_tol)) {
      out.status = SolveStatus::Optimal;
      out.x = std::move(x);
      out.y = std::move(y);
      out.s = std::move(s);
      out.primal_objective = pobj;
      out.dual_objective = dobj;
      out.detail = diag.str();
      return out;
    }
    out.status = SolveStatus::IllPosed;
    out.detail = "tau dominant but scaled point failed verification: " + diag.str();
    return out;
  }

  if (kappa >= ratio_tol * std::max(1.0, tau)) {
    // dual ray (y, s): A'y + s = 0, s in K*, b'y > 0 proves primal infeasibility
    Vector y = z.y;
    Vector s = z.s();
    const double ms = std::max({y.size() > 0 ? y.cwiseAbs().maxCoeff() : 0.0,
                                s.cwiseAbs().maxCoeff(), 1e-300});
    y /= ms;
    s /= ms;
    const double by = p.b.dot(y);
    const double dres = (p.A.transpose() * y + s).cwiseAbs().maxCoeff();
    // the exact ray satisfies A'y + s = (c tau - r_d) / ms
    const double dres_budget = std::max(
        1e-9, 100.0 * (p.c.cwiseAbs().maxCoeff() * tau + eps * std::max(1.0, res0_norm)) / ms);
    const bool primal_inf =
        by >= std::max(1e-8, 10.0 * dres) && dres <= dres_budget && cone->inDualCone(s, 1e-7 + dres_budget);

    // primal ray x: Ax = 0, x in K, c'x < 0 proves dual infeasibility
    Vector x = z.x();
    const double mx = std::max(x.cwiseAbs().maxCoeff(), 1e-300);
    x /= mx;
    const double cx = p.c.dot(x);
    const double pres = p.m() > 0 ? (p.A * x).cwiseAbs().maxCoeff() : 0.0;
    const double bmax = p.m() > 0 ? p.b.cwiseAbs().maxCoeff() : 0.0;
    const double pres_budget =
        std::max(1e-9, 100.0 * (bmax * tau + eps * std::max(1.0, res0_norm)) / mx);
    const bool dual_inf = -cx >= std::max(1e-8, 10.0 * pres) && pres <= pres_budget &&
                          cone->inCone(x, 1e-7 + pres_budget);

    if (primal_inf && (!dual_inf || by >= -cx)) {
      out.status = SolveStatus::PrimalInfeasible;
      out.y = std::move(y);
      out.s = std::move(s);
      out.dual_objective = by;
      out.detail = "Farkas certificate: b'y = " + std::to_string(by);
      return out;
    }
    if (dual_inf) {
      out.status = SolveStatus::DualInfeasible;
      out.x = std::move(x);
      out.primal_objective = cx;
      out.detail = "unbounded ray: c'x = " + std::to_string(cx);
      return out;
    }
    out.status = SolveStatus::IllPosed;
    out.detail = "kappa dominant but no certificate verified";
    return out;
  }

  out.status = SolveStatus::IllPosed;
  out.detail = "tau and kappa both below the classification threshold";
  return out;
}

SolveOutcome solve(const ConicProblem& p, const SolverParams& params) {
  params.validate();
  p.validate();
  BarrierPtr barrier = makeBarrier(p.cone);
  BarrierPtr fbar = homogenize(barrier);
  const double nubar = fbar->nu();
  const GMatrix G(p.A, p.b, p.c);

  HsdPoint z = initialPoint(p, *fbar);
  const double mu0 = complementarityGap(z, nubar);
  const double res0_norm = linearResidual(G, z).norm();
  const StepConstants constants = stepConstants(params.eta(), nubar);
  const double alpha_fixed = fixedPredictorAlpha(params.preset, constants);
  const int max_iters = params.max_iters >= 0
                            ? params.max_iters
                            : 10 * iterationBoundEstimate(barrier->nu(), params.eps, params.preset);

  SolveOutcome out;
  int iter = 0;
  while (true) {
    const double mu = complementarityGap(z, nubar);
    const double res_norm = linearResidual(G, z).norm();
    if (checkTermination(mu, mu0, res_norm, res0_norm, params.eps) == TermDecision::Converged) {
      SolveOutcome classified = classifySolution(z, p, params, mu0, res0_norm);
      classified.trace = std::move(out.trace);
      out = std::move(classified);
      break;
    }
    // early certificate exit once tau collapses relative to kappa
    if (z.tau() < params.tau_kappa_ratio_tol * std::max(1.0, z.kappa())) {
      SolveOutcome cert = classifySolution(z, p, params, mu0, res0_norm);
      if (cert.status == SolveStatus::PrimalInfeasible || cert.status == SolveStatus::DualInfeasible) {
        cert.trace = std::move(out.trace);
        out = std::move(cert);
        break;
      }
    }
    if (iter >= max_iters) {
      out.status = SolveStatus::IterationLimit;
      out.detail = "iteration limit " + std::to_string(max_iters) + " reached";
      break;
    }
    ++iter;

    // predictor
    auto t0 = std::chrono::steady_clock::now();
    double prox_before = proximity(z, *fbar);
    StepDirection dz = predictorDirection(G, z, *fbar, params.kkt);
    const double alpha = params.line_search
                             ? lineSearchPredictor(z, dz, params.beta(), *fbar, constants, alpha_fixed)
                             : alpha_fixed;
    z = applyStep(z, dz, alpha);
    double prox_after = proximity(z, *fbar);
    if (!(prox_after <= params.beta() + kInvariantSlack)) {
      throw PhaseInvariantError("solver: predictor step left N(beta)", "predictor", prox_after,
                                params.beta(), z);
    }
    if (!(complementarityGap(z, nubar) > 0.0)) {
      throw PhaseInvariantError("solver: mu became nonpositive after predictor", "predictor",
                                prox_after, params.beta(), z);
    }
    out.trace.push_back({iter, StepKind::Predictor, alpha, complementarityGap(z, nubar),
                         linearResidual(G, z).norm(), prox_before, prox_after, constants.kappa_x,
                         elapsedMs(t0)});

    // r_c corrector steps
    for (int j = 0; j < params.correctorCount(); ++j) {
      t0 = std::chrono::steady_clock::now();
      prox_before = prox_after;
      dz = correctorDirection(G, z, *fbar, params.kkt);
      z = applyStep(z, dz, params.alphaC());
      prox_after = proximity(z, *fbar);
      if (!(complementarityGap(z, nubar) > 0.0)) {
        throw PhaseInvariantError("solver: mu became nonpositive after corrector", "corrector",
                                  prox_after, params.eta(), z);
      }
      out.trace.push_back({iter, StepKind::Corrector, params.alphaC(),
                           complementarityGap(z, nubar), linearResidual(G, z).norm(), prox_before,
                           prox_after, constants.kappa_x, elapsedMs(t0)});
    }
    if (!(prox_after <= params.eta() + kInvariantSlack)) {
      throw PhaseInvariantError("solver: corrector phase left N(eta)", "corrector", prox_after,
                                params.eta(), z);
    }
  }

  out.iterations = iter;
  out.final_mu = complementarityGap(z, nubar);
  out.final_residual_norm = linearResidual(G, z).norm();
  return out;
}

}  // namespace conipm
