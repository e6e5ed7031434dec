#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conipm/barrier.hpp"
#include "conipm/hsd.hpp"
#include "conipm/problem_io.hpp"
#include "conipm/solver.hpp"
#include "conipm/verifier.hpp"

namespace py = pybind11;
using namespace conipm;

namespace {

// shared_ptr<const Barrier> does not fit pybind11's holder model directly,
// so the python side works with a thin value wrapper.
struct PyBarrier {
  BarrierPtr ptr;
};

ConeSpec conesFromList(const std::vector<std::pair<std::string, int>>& cones) {
  ConeSpec spec;
  for (const auto& [type, dim] : cones) {
    if (type == "nonneg") {
      spec.cones.push_back({ConeKind::NonnegativeOrthant, dim});
    } else if (type == "exp") {
      spec.cones.push_back({ConeKind::ExponentialCone, dim});
    } else {
      throw ConfigurationError("unknown cone type '" + type + "' (use 'nonneg' or 'exp')");
    }
  }
  return spec;
}

std::vector<std::pair<std::string, int>> conesToList(const ConeSpec& spec) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& c : spec.cones) {
    out.emplace_back(c.kind == ConeKind::NonnegativeOrthant ? "nonneg" : "exp", c.dim);
  }
  return out;
}

SolveOutcome solveWrapper(const ConicProblem& p, int preset, double eps, bool line_search,
                          int max_iters, const std::string& kkt) {
  SolverParams params;
  params.preset = preset;
  params.eps = eps;
  params.line_search = line_search;
  params.max_iters = max_iters;
  if (kkt == "full") {
    params.kkt = KktMethod::FullSystem;
  } else if (kkt == "eliminated") {
    params.kkt = KktMethod::Eliminated;
  } else {
    throw ConfigurationError("kkt must be 'full' or 'eliminated'");
  }
  return solve(p, params);
}

py::list reportsToPython(const std::vector<CheckReport>& reports) {
  py::list out;
  for (const auto& r : reports) {
    py::dict d;
    d["id"] = r.id;
    d["instance"] = r.instance;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["pass"] = r.pass;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(conipm, m) {
  m.doc() = "homogeneous self-dual predictor-corrector solver for non-symmetric conic programs";

  py::register_exception<ParseError>(m, "ProblemFormatError", PyExc_ValueError);
  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<InteriorViolationError>(m, "InteriorViolationError", PyExc_ValueError);
  py::register_exception<ConditioningError>(m, "ConditioningError", PyExc_RuntimeError);
  py::register_exception<NoConvergenceError>(m, "NoConvergenceError", PyExc_RuntimeError);

  py::class_<PyBarrier>(m, "Barrier")
      .def_property_readonly("dim", [](const PyBarrier& b) { return b.ptr->dim(); })
      .def_property_readonly("nu", [](const PyBarrier& b) { return b.ptr->nu(); })
      .def("interior", [](const PyBarrier& b, const Vector& x) { return b.ptr->interior(x); })
      .def("value", [](const PyBarrier& b, const Vector& x) { return b.ptr->value(x); })
      .def("gradient", [](const PyBarrier& b, const Vector& x) { return b.ptr->gradient(x); })
      .def("hessian", [](const PyBarrier& b, const Vector& x) { return b.ptr->hessian(x); })
      .def("interior_point", [](const PyBarrier& b) { return b.ptr->interiorPoint(); })
      .def("newton_step", [](const PyBarrier& b, const Vector& x) { return newtonStep(*b.ptr, x); })
      .def(
          "gradient_inverse",
          [](const PyBarrier& b, const Vector& s, double tol, int max_iters) {
            return gradientInverse(*b.ptr, s, tol, max_iters);
          },
          py::arg("s"), py::arg("tol") = 1e-9, py::arg("max_iters") = 200);

  m.def("orthant_barrier", [](int n) { return PyBarrier{logBarrierOrthant(n)}; }, py::arg("n"));
  m.def("exp_cone_barrier", [] { return PyBarrier{expConeBarrier()}; });
  m.def("product_barrier", [](const std::vector<PyBarrier>& parts) {
    std::vector<BarrierPtr> ptrs;
    for (const auto& p : parts) ptrs.push_back(p.ptr);
    return PyBarrier{productBarrier(std::move(ptrs))};
  });
  m.def("homogenize", [](const PyBarrier& b) { return PyBarrier{homogenize(b.ptr)}; });

  py::class_<ConicProblem>(m, "Problem")
      .def(py::init([](const Matrix& A, const Vector& b, const Vector& c,
                       const std::vector<std::pair<std::string, int>>& cones) {
             ConicProblem p{A, b, c, conesFromList(cones)};
             p.validate();
             return p;
           }),
           py::arg("A"), py::arg("b"), py::arg("c"), py::arg("cones"))
      .def_readonly("A", &ConicProblem::A)
      .def_readonly("b", &ConicProblem::b)
      .def_readonly("c", &ConicProblem::c)
      .def_property_readonly("m", &ConicProblem::m)
      .def_property_readonly("n", &ConicProblem::n)
      .def_property_readonly("cones", [](const ConicProblem& p) { return conesToList(p.cone); })
      .def("to_json", &serializeProblem);

  py::class_<SolveOutcome>(m, "Result")
      .def_property_readonly("status", [](const SolveOutcome& o) { return statusName(o.status); })
      .def_readonly("x", &SolveOutcome::x)
      .def_readonly("y", &SolveOutcome::y)
      .def_readonly("s", &SolveOutcome::s)
      .def_readonly("primal_objective", &SolveOutcome::primal_objective)
      .def_readonly("dual_objective", &SolveOutcome::dual_objective)
      .def_readonly("final_mu", &SolveOutcome::final_mu)
      .def_readonly("final_residual_norm", &SolveOutcome::final_residual_norm)
      .def_readonly("iterations", &SolveOutcome::iterations)
      .def_readonly("detail", &SolveOutcome::detail)
      .def_property_readonly("trace", [](const SolveOutcome& o) {
        py::list rows;
        for (const auto& r : o.trace) {
          rows.append(py::make_tuple(r.iter,
                                     r.phase == StepKind::Predictor ? "predictor" : "corrector",
                                     r.alpha, r.mu, r.residual_norm, r.prox_after));
        }
        return rows;
      })
      .def("to_json", &solveOutcomeJson);

  m.def("solve", &solveWrapper, py::arg("problem"), py::arg("preset") = 1, py::arg("eps") = 1e-8,
        py::arg("line_search") = false, py::arg("max_iters") = -1, py::arg("kkt") = "full",
        py::call_guard<py::gil_scoped_release>());
  m.def("load_problem", &parseProblem, py::arg("path"));
  m.def("loads_problem", &parseProblemText, py::arg("text"));
  m.def("save_problem", [](const ConicProblem& p, const std::string& path) { writeProblem(path, p); },
        py::arg("problem"), py::arg("path"));

  m.def(
      "verify",
      [](const std::string& suite, int samples, std::uint64_t seed) {
        SweepOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        return reportsToPython(runSuite(suite, opts));
      },
      py::arg("suite") = "all", py::arg("samples") = 1000, py::arg("seed") = kDefaultVerifySeed);
  m.def("verify_suites", &suiteNames);

  m.attr("__version__") = "0.1.0";
}
