#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "conipm/hsd.hpp"
#include "conipm/solver.hpp"
#include "conipm/verifier.hpp"

namespace conipm {

/// Reads a problem file:
///   {"m": int, "n": int, "A": [m*n reals, row-major], "b": [m reals],
///    "c": [n reals], "cones": [{"type": "nonneg"|"exp", "dim": int}, ...]}
/// Throws ParseError naming the offending field or JSON location.
ConicProblem parseProblem(const std::string& path);
ConicProblem parseProblemText(const std::string& text);

/// Serializes with 17 significant digits so that parse(serialize(p)) == p.
std::string serializeProblem(const ConicProblem& p);
void writeProblem(const std::string& path, const ConicProblem& p);

// Trace CSV: header iter,phase,alpha,mu,residual_norm,proximity,wall_ms and
// one row per predictor or corrector step, in execution order.
void writeTraceCsv(std::ostream& os, const std::vector<IterationRecord>& trace);
void writeTraceCsv(const std::string& path, const std::vector<IterationRecord>& trace);

/// Machine-readable solve result for the CLI.
std::string solveOutcomeJson(const SolveOutcome& outcome);

// Verification report: one line per check, "id,lhs,rhs,pass" with pass in
// {0,1}; byte-identical for identical inputs and seed.
void writeReportLines(std::ostream& os, const std::vector<CheckReport>& reports);
void writeReportFile(const std::string& path, const std::vector<CheckReport>& reports);

}  // namespace conipm
