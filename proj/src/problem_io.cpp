#include "conipm/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conipm {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("problem file: missing field '") + name + "'");
  return *it;
}

int intField(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("problem file: field '") + name + "' must be an integer");
  }
  return v.get<int>();
}

Vector vectorField(const json& j, const char* name, int expected) {
  const json& v = field(j, name);
  if (!v.is_array()) throw ParseError(std::string("problem file: field '") + name + "' must be an array");
  if (static_cast<int>(v.size()) != expected) {
    throw ParseError(std::string("problem file: field '") + name + "' has " +
                     std::to_string(v.size()) + " entries, expected " + std::to_string(expected));
  }
  Vector out(expected);
  for (int i = 0; i < expected; ++i) {
    if (!v[i].is_number()) {
      throw ParseError(std::string("problem file: field '") + name + "' entry " +
                       std::to_string(i) + " is not a number");
    }
    out[i] = v[i].get<double>();
  }
  return out;
}

ConicProblem fromJson(const json& j) {
  if (!j.is_object()) throw ParseError("problem file: top level must be a JSON object");
  const int m = intField(j, "m");
  const int n = intField(j, "n");
  if (m < 0) throw ParseError("problem file: m must be >= 0");
  if (n < 1) throw ParseError("problem file: n must be >= 1");

  ConicProblem p;
  const Vector a_flat = vectorField(j, "A", m * n);
  p.A = Matrix(m, n);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) p.A(i, k) = a_flat[i * n + k];
  }
  p.b = vectorField(j, "b", m);
  p.c = vectorField(j, "c", n);

  const json& cones = field(j, "cones");
  if (!cones.is_array() || cones.empty()) {
    throw ParseError("problem file: field 'cones' must be a non-empty array");
  }
  for (size_t k = 0; k < cones.size(); ++k) {
    const json& ck = cones[k];
    const std::string where = "problem file: cones[" + std::to_string(k) + "]";
    if (!ck.is_object()) throw ParseError(where + " must be an object");
    auto type_it = ck.find("type");
    auto dim_it = ck.find("dim");
    if (type_it == ck.end() || !type_it->is_string()) throw ParseError(where + ": missing string field 'type'");
    if (dim_it == ck.end() || !dim_it->is_number_integer()) throw ParseError(where + ": missing integer field 'dim'");
    const std::string type = type_it->get<std::string>();
    const int dim = dim_it->get<int>();
    if (type == "nonneg") {
      if (dim < 1) throw ParseError(where + ": nonneg cone needs dim >= 1");
      p.cone.cones.push_back({ConeKind::NonnegativeOrthant, dim});
    } else if (type == "exp") {
      if (dim != 3) throw ParseError(where + ": exp cone has dim 3");
      p.cone.cones.push_back({ConeKind::ExponentialCone, dim});
    } else {
      throw ParseError(where + ": unknown cone type '" + type + "'");
    }
  }
  if (p.cone.totalDim() != n) {
    throw ParseError("problem file: cone dims sum to " + std::to_string(p.cone.totalDim()) +
                     ", expected n = " + std::to_string(n));
  }
  try {
    p.validate();
  } catch (const ConfigurationError& e) {
    throw ParseError(std::string("problem file: ") + e.what());
  }
  return p;
}

}  // namespace

ConicProblem parseProblemText(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem file: ") + e.what());
  }
  return fromJson(j);
}

ConicProblem parseProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("problem file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseProblemText(buf.str());
}

std::string serializeProblem(const ConicProblem& p) {
  std::ostringstream os;
  const int m = p.m();
  const int n = p.n();
  os << "{\"m\": " << m << ", \"n\": " << n << ", \"A\": [";
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i + k > 0) os << ", ";
      os << fmt(p.A(i, k));
    }
  }
  os << "], \"b\": [";
  for (int i = 0; i < m; ++i) os << (i ? ", " : "") << fmt(p.b[i]);
  os << "], \"c\": [";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << fmt(p.c[i]);
  os << "], \"cones\": [";
  for (size_t k = 0; k < p.cone.cones.size(); ++k) {
    const auto& c = p.cone.cones[k];
    os << (k ? ", " : "") << "{\"type\": \""
       << (c.kind == ConeKind::NonnegativeOrthant ? "nonneg" : "exp") << "\", \"dim\": " << c.dim
       << "}";
  }
  os << "]}";
  return os.str();
}

void writeProblem(const std::string& path, const ConicProblem& p) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write problem file '" + path + "'");
  out << serializeProblem(p) << "\n";
}

void writeTraceCsv(std::ostream& os, const std::vector<IterationRecord>& trace) {
  os << "iter,phase,alpha,mu,residual_norm,proximity,wall_ms\n";
  for (const auto& r : trace) {
    os << r.iter << ',' << (r.phase == StepKind::Predictor ? "predictor" : "corrector") << ','
       << fmt(r.alpha) << ',' << fmt(r.mu) << ',' << fmt(r.residual_norm) << ','
       << fmt(r.prox_after) << ',' << fmt(r.wall_ms) << '\n';
  }
}

void writeTraceCsv(const std::string& path, const std::vector<IterationRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write trace file '" + path + "'");
  writeTraceCsv(out, trace);
}

std::string solveOutcomeJson(const SolveOutcome& outcome) {
  nlohmann::ordered_json j;
  j["status"] = statusName(outcome.status);
  j["iterations"] = outcome.iterations;
  if (std::isfinite(outcome.final_mu)) j["final_mu"] = outcome.final_mu;
  if (std::isfinite(outcome.final_residual_norm)) j["final_residual_norm"] = outcome.final_residual_norm;
  if (std::isfinite(outcome.primal_objective)) j["primal_objective"] = outcome.primal_objective;
  if (std::isfinite(outcome.dual_objective)) j["dual_objective"] = outcome.dual_objective;
  auto vec = [](const Vector& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    return out;
  };
  if (outcome.x.size() > 0) j["x"] = vec(outcome.x);
  if (outcome.y.size() > 0) j["y"] = vec(outcome.y);
  if (outcome.s.size() > 0) j["s"] = vec(outcome.s);
  if (!outcome.detail.empty()) j["detail"] = outcome.detail;
  return j.dump(2);
}

void writeReportLines(std::ostream& os, const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    os << r.id << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

void writeReportFile(const std::string& path, const std::vector<CheckReport>& reports) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write report file '" + path + "'");
  writeReportLines(out, reports);
}

}  // namespace conipm
