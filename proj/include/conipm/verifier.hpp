#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "conipm/barrier.hpp"
#include "conipm/hsd.hpp"
#include "conipm/types.hpp"

namespace conipm {

// Fixed default seed for all randomized sweeps, so that repeated runs are
// byte-identical.
inline constexpr std::uint64_t kDefaultVerifySeed = 1729;

/// Outcome of one numeric check: the sweep's worst sample is recorded.
/// Default pass policy is lhs <= rhs + slack; violation-reproduction checks
/// invert it (they pass when the claimed bound is strictly exceeded).
struct CheckReport {
  std::string id;
  std::string instance;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = true;
};

struct SweepOptions {
  int samples = 1000;
  std::uint64_t seed = kDefaultVerifySeed;
};

/// Right-hand side of the corrected predictor proximity bound, as a function
/// of c_p = alpha_p * kappa_x and the neighborhood parameter eta:
///   c_p/(1-c_p)^2
///   + (2 eta (sqrt2 + c_p) + 4 (1 + sqrt2) c_p) / ((1-c_p)(sqrt2-c_p)(2-c_p eta)).
double predictorProximityBound(double cp, double eta);

/// Right-hand side of the corrected corrector proximity bound:
///   (2 - a theta^2)^{-1} (2 (a theta / (1 - a theta))^2
///                         + 4 (1-a) theta / (1 - a theta) + sqrt2 a theta^2).
double correctorProximityBound(double theta, double alpha_c);

// Local-norm / self-concordance sweeps for one barrier. `tag` labels the
// barrier in the check ids.
CheckReport checkSelfConcordanceRatio(const Barrier& f, const std::string& tag, const SweepOptions& opts);
CheckReport checkHessianOperatorBounds(const Barrier& f, const std::string& tag, const SweepOptions& opts);
CheckReport checkDampedNewton(const Barrier& f, const std::string& tag, const SweepOptions& opts);
CheckReport checkDualNormChange(const Barrier& f, const std::string& tag, const SweepOptions& opts);
CheckReport checkGradientBound(const Barrier& f, const std::string& tag, const SweepOptions& opts);
std::vector<CheckReport> checkLogHomogeneity(const Barrier& f, const std::string& tag, const SweepOptions& opts);
std::vector<CheckReport> checkConjugacy(const Barrier& f, const std::string& tag, const SweepOptions& opts);
std::vector<CheckReport> checkFiniteDifferences(const Barrier& f, const std::string& tag, const SweepOptions& opts);

// Step-analysis sweeps over random instances with random neighborhood points.
std::vector<CheckReport> checkPredictorBounds(const SweepOptions& opts);
std::vector<CheckReport> checkCorrectorBounds(const SweepOptions& opts);

/// Full predictor/corrector phase round trip: from N(eta), the fixed-step
/// predictor must land in N(beta) and r_c unit corrector steps must return to
/// N(eta). Zero violations expected.
std::vector<CheckReport> checkPhaseInvariants(int preset, const SweepOptions& opts);

/// The published LP instance and the two iterates on which the original
/// (uncorrected) proximity bound provably fails.
struct CounterexampleFixture {
  ConicProblem problem;
  double beta = 0.30;
  double eta = 0.15;
  double alpha_p = 0.052;
  double alpha_c = 1.0 / 84.0;
  HsdPoint predictor_point;
  HsdPoint corrector_point;
};

CounterexampleFixture counterexampleFixture();

/// Deterministically reproduces both violations of the uncorrected bound and
/// confirms that the corrected bounds do hold on the same fixtures.
std::vector<CheckReport> reproduceCounterexamples();

// Random test-instance helpers (also used by the acceptance suite).
ConicProblem sampleProblem(std::mt19937_64& rng, int max_n, int max_m, bool with_exp);
HsdPoint samplePointInNeighborhood(const ConicProblem& p, const Barrier& fbar, double theta_target,
                                   std::mt19937_64& rng);

/// Named suites: "selfconcordance", "predictor", "corrector",
/// "counterexamples", or "all".
std::vector<CheckReport> runSuite(const std::string& suite, const SweepOptions& opts);
std::vector<std::string> suiteNames();

}  // namespace conipm
