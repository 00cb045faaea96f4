#include <algorithm>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qshift/cohomology.hpp"
#include "qshift/derham.hpp"
#include "qshift/duality.hpp"
#include "qshift/json_schema.hpp"
#include "qshift/problem.hpp"
#include "qshift/quantise.hpp"
#include "qshift/report.hpp"

namespace py = pybind11;
using namespace qshift;

namespace {

// Round-trips through the json module so callers get plain dicts and lists.
py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

TruncationSpec truncation(const std::string& mode, int bound, int window) {
  TruncationSpec t;
  if (mode == "weight") {
    t.mode = TruncationMode::WeightGraded;
  } else if (mode == "truncate") {
    t.mode = TruncationMode::DegreeTruncated;
  } else {
    throw Error(ErrorKind::InvalidArgument, "mode must be 'weight' or 'truncate'");
  }
  t.bound = bound;
  t.stabilisation_window = window;
  return t;
}

py::dict cohomology_dict(const CohomologyReport& r) {
  py::dict d;
  d["dims"] = r.dims_by_degree;
  d["field"] = field_name(r.field);
  d["stabilised"] = r.stabilised;
  d["euler_characteristic"] = r.euler_characteristic;
  d["level"] = r.level;
  d["total"] = r.total();
  return d;
}

template <class T>
std::optional<T> cast_opt(const py::kwargs& kw, const char* key) {
  if (!kw.contains(key) || kw[key].is_none()) return std::nullopt;
  return kw[key].cast<T>();
}

CommandOptions options_from(const py::kwargs& kw) {
  CommandOptions o;
  o.mode = cast_opt<std::string>(kw, "mode");
  o.max_degree = cast_opt<int>(kw, "max_degree");
  o.seed = cast_opt<std::uint64_t>(kw, "seed");
  o.window = cast_opt<int>(kw, "window");
  o.hbar_order = cast_opt<int>(kw, "hbar_order");
  o.p = cast_opt<int>(kw, "p");
  o.k = cast_opt<int>(kw, "k");
  o.kind = cast_opt<std::string>(kw, "kind");
  o.level = cast_opt<int>(kw, "level");
  o.weight_bound = cast_opt<int>(kw, "weight_bound");
  o.max_hbar = cast_opt<int>(kw, "max_hbar");
  static const std::vector<std::string> known = {"mode", "p", "k", "kind", "level", "seed", "window", "hbar_order",
                                                 "max_degree", "weight_bound", "max_hbar"};
  for (const auto& [key, value] : kw) {
    const auto name = key.cast<std::string>();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw py::type_error("unknown option '" + name + "'");
    }
  }
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact BV quantisation toolkit for polynomial critical loci";

  static py::handle qshift_error = py::exception<Error>(m, "QshiftError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string kind(error_kind_name(e.kind()));
      py::object exc = py::reinterpret_borrow<py::object>(qshift_error)(kind + ": " + e.what());
      exc.attr("kind") = kind;
      PyErr_SetObject(qshift_error.ptr(), exc.ptr());
    }
  });

  py::class_<ProblemFile>(m, "Problem")
      .def(py::init([](const std::string& text) { return parse_problem(text); }), py::arg("text"))
      .def_readonly("vars", &ProblemFile::vars)
      .def_property_readonly("f", [](const ProblemFile& p) { return polynomial_text(p.f, p.vars); })
      .def_property_readonly("options",
                             [](const ProblemFile& p) {
                               py::dict d;
                               for (const auto& [k, v] : p.options) d[py::str(k)] = v;
                               return d;
                             })
      .def("__str__", &print_problem)
      .def("__repr__", [](const ProblemFile& p) { return "Problem(" + py::repr(py::str(print_problem(p))).cast<std::string>() + ")"; })
      .def("__eq__", [](const ProblemFile& a, const ProblemFile& b) { return a == b; });

  m.def("commands", &command_names, "Names accepted by run().");

  m.def(
      "run",
      [](const std::string& command, const std::string& problem_text, const py::kwargs& kw) {
        return to_python(run_command_text(command, problem_text, options_from(kw)).to_json());
      },
      py::arg("command"), py::arg("problem"),
      "Run a CLI command on problem text and return the JSON report as a dict.");

  m.def("milnor_number", [](const ProblemFile& p) { return milnor_number(p.f, static_cast<int>(p.vars.size())); },
        py::arg("problem"));

  m.def(
      "twisted_dims",
      [](const ProblemFile& p, const std::string& mode, int bound, int window, std::uint64_t seed) {
        return cohomology_dict(twisted_derham_dims(crit_locus_of(p), truncation(mode, bound, window), seed));
      },
      py::arg("problem"), py::arg("mode") = "weight", py::arg("bound") = 8, py::arg("window") = 2, py::arg("seed") = 0);

  m.def(
      "koszul_dims",
      [](const ProblemFile& p, const std::string& mode, int bound, int window, std::uint64_t seed) {
        return cohomology_dict(koszul_dims_at_hbar_zero(crit_locus_of(p), truncation(mode, bound, window), seed));
      },
      py::arg("problem"), py::arg("mode") = "weight", py::arg("bound") = 8, py::arg("window") = 2, py::arg("seed") = 0);

  m.def(
      "bv_operator", [](const ProblemFile& p) { return bv_quantisation(crit_locus_of(p)).series().to_string(p.signature()); },
      py::arg("problem"));

  m.def(
      "kappa_residual",
      [](const ProblemFile& p) {
        const CritLocus x = crit_locus_of(p);
        return kappa(x, bv_quantisation(x)).to_string(p.signature());
      },
      py::arg("problem"), "Maurer-Cartan defect of the BV quantisation, printed; '0' when it vanishes.");

  m.def(
      "compatibility",
      [](const ProblemFile& p, int weight_bound, int hbar_order) {
        const CritLocus x = crit_locus_of(p);
        const CompatVerdict v = check_compatibility(x, canonical_symplectic(x), bv_quantisation(x), {weight_bound, hbar_order});
        return compat_kind_name(v.kind);
      },
      py::arg("problem"), py::arg("weight_bound") = 2, py::arg("hbar_order") = 4);

  m.def(
      "is_self_dual",
      [](const ProblemFile& p) {
        const CritLocus x = crit_locus_of(p);
        return is_self_dual(bv_quantisation(x), solve_sign_profile(x)).strict;
      },
      py::arg("problem"));

  m.def(
      "eigen",
      [](const ProblemFile& p, int deg, int k, int weight_bound) {
        const EigenReport r = nu_eigen_analysis(crit_locus_of(p), deg, k, weight_bound);
        py::dict d;
        d["dimension"] = r.dimension;
        d["eigenvalues"] = r.eigenvalues;
        d["diagonalisable"] = r.diagonalisable;
        d["combined_scalar"] = r.combined_scalar ? py::object(py::str(rational_string(*r.combined_scalar))) : py::none();
        d["invertible"] = r.invertible;
        return d;
      },
      py::arg("problem"), py::arg("p"), py::arg("k"), py::arg("weight_bound") = 1);

  m.def("report_schema", [] { return to_python(report_schema()); });
  m.def(
      "validate_report", [](const py::object& report) { return validate_json(from_python(report), report_schema()); },
      py::arg("report"), "Schema violations of a report dict; empty when valid.");
}
