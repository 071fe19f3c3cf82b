#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latconv/report.hpp"

namespace py = pybind11;
using namespace latconv;

namespace {

py::dict density_dict(const DensityResult& d) {
  py::dict out;
  switch (d.kind) {
    case DensityResult::Kind::Exact:
      out["kind"] = "exact";
      out["value"] = d.value.str();
      break;
    case DensityResult::Kind::Estimated:
      out["kind"] = "estimated";
      out["value"] = d.value.str();
      out["at_n"] = d.at_n;
      out["oscillation"] = d.oscillation.str();
      break;
    case DensityResult::Kind::NoLimit:
      out["kind"] = "no-limit";
      out["cluster_lo"] = d.cluster_lo.str();
      out["cluster_hi"] = d.cluster_hi.str();
      break;
    case DensityResult::Kind::Inconclusive:
      out["kind"] = "inconclusive";
      break;
  }
  if (!d.note.empty()) out["note"] = d.note;
  return out;
}

py::dict result_dict(const RunResult& res) {
  py::dict out;
  out["report"] = res.json;
  out["refuted"] = res.refuted;
  out["inconclusive"] = res.inconclusive;
  out["errors"] = res.errors;
  out["clean"] = res.clean_exit();
  return out;
}

RunOptions make_options(long long prefix_n, long long n_max, long long budget,
                        unsigned long long seed, int jobs, bool timings) {
  RunOptions opts;
  opts.prefix_n = prefix_n;
  opts.n_max = n_max;
  opts.budget = budget;
  opts.seed = seed;
  opts.jobs = jobs;
  opts.timings = timings;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_latconv, m) {
  m.doc() = "exact rational lattice sequences, deferred densities, and convergence checks";

  py::register_exception<Error>(m, "LatconvError", PyExc_ValueError);

  py::class_<Rational>(m, "Rational")
      .def(py::init<long long>(), py::arg("value"))
      .def(py::init([](long long num, long long den) {
             return Rational(BigInt(num), BigInt(den));
           }),
           py::arg("num"), py::arg("den"))
      .def_static("parse", [](const std::string& s) { return Rational::parse(s); })
      .def_property_readonly("num", [](const Rational& q) { return q.numerator().str(); })
      .def_property_readonly("den", [](const Rational& q) { return q.denominator().str(); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def(py::self > py::self)
      .def(py::self >= py::self)
      .def("__str__", &Rational::str)
      .def("__repr__", [](const Rational& q) { return "Rational(" + q.str() + ")"; });

  py::enum_<OrderRelation>(m, "OrderRelation")
      .value("Equal", OrderRelation::Equal)
      .value("Less", OrderRelation::Less)
      .value("Greater", OrderRelation::Greater)
      .value("Incomparable", OrderRelation::Incomparable);

  py::class_<LatticeVector>(m, "Vector")
      .def(py::init<std::vector<Rational>>(), py::arg("coords"))
      .def_static("zero", &LatticeVector::zero, py::arg("dim"))
      .def_property_readonly("dim", &LatticeVector::dim)
      .def("__len__", &LatticeVector::dim)
      .def("__getitem__",
           [](const LatticeVector& v, int i) {
             if (i < 0 || i >= v.dim()) throw py::index_error();
             return v[i];
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def("__rmul__", [](const LatticeVector& v, const Rational& c) { return c * v; })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__str__", &LatticeVector::str)
      .def("__repr__", [](const LatticeVector& v) { return "Vector" + v.str(); });

  m.def("join", &join, "coordinatewise maximum");
  m.def("meet", &meet, "coordinatewise minimum");
  m.def("positive_part", &positive_part);
  m.def("negative_part", &negative_part);
  m.def("modulus", &modulus);
  m.def("leq", &leq, "coordinatewise less-or-equal");
  m.def("compare", &compare);

  py::class_<IndexSet>(m, "IndexSet")
      .def_static("all", &IndexSet::all)
      .def_static("empty", &IndexSet::empty)
      .def_static("finite", &IndexSet::finite, py::arg("elems"))
      .def_static("ap", &IndexSet::ap, py::arg("modulus"), py::arg("residue"))
      .def_static("power", &IndexSet::power, py::arg("exponent"))
      .def_static("complement", &IndexSet::complement)
      .def_static("union_", &IndexSet::set_union)
      .def_static("intersection", &IndexSet::set_intersection)
      .def("contains", &IndexSet::contains, py::arg("n"))
      .def("count",
           [](const IndexSet& s, long long lo, long long hi) {
             Budget budget(Budget::kDefault);
             return s.count_window(lo, hi, budget).count;
           },
           py::arg("lo"), py::arg("hi"),
           "number of members in the half-open window (lo, hi]")
      .def(py::self == py::self)
      .def("__str__", &IndexSet::str)
      .def("__repr__", [](const IndexSet& s) { return "IndexSet(" + s.str() + ")"; });

  py::class_<DeferredPair>(m, "DeferredPair")
      .def_static("natural", &DeferredPair::natural)
      .def_static("make",
                  [](long long pa, long long pb, long long qa, long long qb) {
                    return DeferredPair::make(IndexRule{pa, pb}, IndexRule{qa, qb});
                  },
                  py::arg("p_slope"), py::arg("p_offset"), py::arg("q_slope"),
                  py::arg("q_offset"), "p_n = p_slope*n + p_offset, likewise q")
      .def("p", &DeferredPair::p, py::arg("n"))
      .def("q", &DeferredPair::q, py::arg("n"))
      .def("width", &DeferredPair::width, py::arg("n"))
      .def(py::self == py::self)
      .def("__str__", &DeferredPair::str)
      .def("__repr__", [](const DeferredPair& d) { return "DeferredPair" + d.str(); });

  m.def("density",
        [](const IndexSet& set, const DeferredPair& pair, long long n_max,
           long long budget) { return density_dict(deferred_density(set, pair, n_max, budget)); },
        py::arg("set"), py::arg("pair") = DeferredPair::natural(),
        py::arg("n_max") = 1'000'000, py::arg("budget") = Budget::kDefault,
        "density of the set along the pair's windows");

  m.def("validate_spec",
        [](const std::string& text) {
          AnalysisSpec spec = parse_spec(text);
          py::dict out;
          out["dim"] = spec.dim;
          out["pair"] = spec.pair.str();
          out["sets"] = spec.sets.size();
          out["sequences"] = spec.sequences.size();
          out["certificates"] = spec.certs.size();
          out["tasks"] = spec.tasks.size();
          return out;
        },
        py::arg("text"), "parse a spec; raises LatconvError on malformed input");

  m.def("run_spec",
        [](const std::string& text, long long prefix_n, long long n_max, long long budget,
           unsigned long long seed, int jobs, bool timings) {
          AnalysisSpec spec = parse_spec(text);
          return result_dict(run(spec, make_options(prefix_n, n_max, budget, seed, jobs, timings)));
        },
        py::arg("text"), py::arg("prefix_n") = 100'000, py::arg("n_max") = 1'000'000,
        py::arg("budget") = Budget::kDefault, py::arg("seed") = 0, py::arg("jobs") = 1,
        py::arg("timings") = false,
        "parse a spec, run every task, and return the JSON report");

  m.def("theorem_report",
        [](unsigned long long seed, int trials) {
          return result_dict(theorem_report(seed, trials, RunOptions{}));
        },
        py::arg("seed") = 0, py::arg("trials") = 100,
        "run the built-in theorem corpus");
}
