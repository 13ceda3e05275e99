#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasihyper/constants.hpp"
#include "quasihyper/constructions.hpp"
#include "quasihyper/counting.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/io.hpp"
#include "quasihyper/simplicity.hpp"
#include "quasihyper/statistics.hpp"
#include "quasihyper/validation.hpp"
#include "quasihyper/version.hpp"

namespace py = pybind11;
using namespace quasihyper;

namespace {

// Exact values cross the boundary as Python ints and fractions.Fraction.
py::object to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

py::object to_py(const mpq_class& q) { return py::module_::import("fractions").attr("Fraction")(q.get_str()); }

py::object to_py(const Scalar& s) {
  if (s.is_exact()) return to_py(s.exact());
  return py::float_(s.to_double());
}

Scalar scalar_arg(const py::handle& x) {
  if (py::isinstance<py::float_>(x)) return Scalar(x.cast<double>());
  return Scalar::parse(py::str(x).cast<std::string>());
}

mpq_class rational_arg(const py::handle& x) { return Scalar::parse(py::str(x).cast<std::string>()).exact(); }

SetSystem make_sets(int k, const std::vector<std::vector<int>>& members) {
  std::vector<Subset> s;
  for (const auto& m : members) {
    for (int e : m)
      if (e < 1 || e > k) throw InvalidArgument("set element outside [1,k]");
    s.push_back(make_subset(m));
  }
  return SetSystem(k, s);
}

std::vector<std::vector<int>> sets_list(const SetSystem& q) {
  std::vector<std::vector<int>> out;
  for (Subset s : q.members()) out.push_back(subset_elements(s));
  return out;
}

StatOptions stat_options(bool exact, unsigned threads) {
  StatOptions o;
  o.mode = exact ? EvalMode::exact : EvalMode::floating;
  o.threads = threads;
  return o;
}

py::object json_to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quasirandom hypergraph statistics";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init([](int k, Vertex n, const std::vector<Tuple>& edges) { return Hypergraph(k, n, edges); }),
           py::arg("k"), py::arg("n"), py::arg("edges"))
      .def_static("complete", &Hypergraph::complete)
      .def_static("empty", &Hypergraph::empty)
      .def_static("parse", [](const std::string& text) { return parse_hypergraph(text); })
      .def_static("load", [](const std::string& path) { return io::load_hypergraph(path); })
      .def_property_readonly("k", &Hypergraph::k)
      .def_property_readonly("n", &Hypergraph::n)
      .def_property_readonly("edge_count", &Hypergraph::edge_count)
      .def("edges", &Hypergraph::edges)
      .def("contains", [](const Hypergraph& h, const Tuple& t) { return h.contains(t); })
      .def("serialize", [](const Hypergraph& h) { return serialize_hypergraph(h); })
      .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; })
      .def("__repr__", [](const Hypergraph& h) {
        return "Hypergraph(k=" + std::to_string(h.k()) + ", n=" + std::to_string(h.n()) +
               ", edges=" + std::to_string(h.edge_count()) + ")";
      });

  py::class_<SetSystem>(m, "SetSystem")
      .def(py::init(&make_sets), py::arg("k"), py::arg("sets"))
      .def_static("level", &SetSystem::level)
      .def_property_readonly("k", &SetSystem::k)
      .def_property_readonly("sets", &sets_list)
      .def("__len__", &SetSystem::size)
      .def("prefix", &SetSystem::prefix)
      .def("__eq__", [](const SetSystem& a, const SetSystem& b) { return a == b; })
      .def("__repr__", &SetSystem::to_string);

  m.def("antichain", &antichain);
  m.def("degree", &degree);
  m.def(
      "precedes",
      [](const SetSystem& a, const SetSystem& b) -> py::object {
        auto r = precedes(a, b);
        if (!r.holds) return py::none();
        return py::cast(*r.bijection);
      },
      "Lexicographically first bijection witnessing A before B, or None.");

  m.def(
      "mq",
      [](const SetSystem& q) {
        auto mqh = build_mq(q).flatten();
        return mqh;
      },
      "M_Q as a flat k-graph.");
  m.def("mq_size", [](const SetSystem& q) {
    auto s = mq_size(q);
    return py::make_tuple(s.vertices, s.edges);
  });

  m.def(
      "is_q_simple",
      [](const Hypergraph& f, const SetSystem& q, bool force) -> py::object {
        SimplicityLimits lim;
        lim.force = force;
        auto r = is_q_simple(f, q, lim);
        py::dict d;
        d["simple"] = r.simple;
        if (r.certificate) {
          d["edge_order"] = r.certificate->edge_order;
          d["vertex_orders"] = r.certificate->vertex_orders;
        }
        return d;
      },
      py::arg("f"), py::arg("q"), py::arg("force") = false);

  m.def(
      "hom_count", [](const Hypergraph& f, const Hypergraph& h, unsigned threads) {
        return to_py(hom_count(f, h, {threads}));
      },
      py::arg("f"), py::arg("h"), py::arg("threads") = 1);
  m.def(
      "labeled_copies", [](const Hypergraph& f, const Hypergraph& h, unsigned threads) {
        return to_py(labeled_copies(f, h, {threads}));
      },
      py::arg("f"), py::arg("h"), py::arg("threads") = 1);
  m.def(
      "cl_check",
      [](const Hypergraph& h, const Hypergraph& f, const py::object& d) {
        auto r = cl_check(h, f, scalar_arg(d));
        py::dict out;
        out["copies"] = to_py(r.copies);
        out["target"] = to_py(r.target);
        out["normalized_error"] = to_py(r.normalized_error);
        return out;
      },
      py::arg("h"), py::arg("f"), py::arg("d"));

  m.def("density", [](const Hypergraph& h) { return to_py(density(h)); });

  m.def(
      "disc",
      [](const Hypergraph& h, const py::object& d, const SetSystem& q, const std::vector<std::vector<Tuple>>& members,
         bool exact) {
        std::vector<TupleSet> sets;
        for (std::size_t j = 0; j < q.size(); ++j) {
          TupleSet s(subset_size(q[j]), h.n());
          if (j < members.size())
            for (const auto& t : members[j]) s.insert(t);
          sets.push_back(std::move(s));
        }
        if (members.size() != q.size()) throw InvalidArgument("need one member per set");
        auto r = disc_value(h, scalar_arg(d), DirectedFamily(q, h.n(), std::move(sets)), stat_options(exact, 1));
        return py::make_tuple(to_py(r.hits), to_py(r.supported), to_py(r.value));
      },
      py::arg("h"), py::arg("d"), py::arg("q"), py::arg("members"), py::arg("exact") = true,
      "DISC witness value for the family given by explicit tuple lists: (hits, supported, value).");

  m.def(
      "wdisc_random",
      [](const Hypergraph& h, const py::object& d, const SetSystem& q, std::uint64_t seed, bool exact) {
        return to_py(wdisc_value(h, scalar_arg(d), WeightEnsemble::random(q, h.n(), seed), stat_options(exact, 1)));
      },
      py::arg("h"), py::arg("d"), py::arg("q"), py::arg("seed"), py::arg("exact") = true);

  m.def(
      "dev",
      [](const Hypergraph& h, const py::object& d, const SetSystem& q, const std::string& mode, bool exact,
         unsigned threads) {
        auto opts = stat_options(exact, threads);
        if (mode == "factorized") return to_py(dev_value_factorized(h, scalar_arg(d), q, opts));
        if (mode == "maps") return to_py(dev_value(h, scalar_arg(d), q, DevMode::all_maps, opts));
        if (mode == "injective") return to_py(dev_value(h, scalar_arg(d), q, DevMode::injective, opts));
        throw InvalidArgument("mode must be factorized, maps or injective");
      },
      py::arg("h"), py::arg("d"), py::arg("q"), py::arg("mode") = "factorized", py::arg("exact") = true,
      py::arg("threads") = 1);

  m.def(
      "min_check",
      [](const Hypergraph& h, const py::object& d, const py::object& eps, const SetSystem& q) {
        auto r = min_check(h, scalar_arg(d), scalar_arg(eps), q);
        py::dict out;
        out["density"] = to_py(r.density);
        out["density_ok"] = r.density_ok;
        out["count"] = to_py(r.count);
        out["method"] = r.method;
        out["bound"] = to_py(r.bound);
        out["count_ok"] = r.count_ok;
        return out;
      },
      py::arg("h"), py::arg("d"), py::arg("eps"), py::arg("q"));

  m.def(
      "random_hypergraph",
      [](Vertex n, int k, const py::object& p, std::uint64_t seed) {
        return random_hypergraph(n, k, rational_arg(p), seed);
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("seed"));
  m.def(
      "parity_hypergraph",
      [](Vertex n, int i, const SetSystem& q, std::uint64_t seed) {
        return parity_hypergraph(random_iset_system(n, i, seed), q);
      },
      py::arg("n"), py::arg("i"), py::arg("q"), py::arg("seed"),
      "H^(k)(B) for a random family B of i-subsets of [0,n).");

  m.def(
      "constants",
      [](const SetSystem& q, const py::object& delta, const Hypergraph* f) {
        return json_to_py(constants_report(q, rational_arg(delta), f));
      },
      py::arg("q"), py::arg("delta"), py::arg("f") = nullptr);

  m.def(
      "run_acceptance",
      [](bool full, std::uint64_t seed, std::vector<int> only) {
        AcceptanceOptions o;
        o.full = full;
        o.seed = seed;
        o.only = std::move(only);
        std::vector<py::dict> out;
        for (const auto& r : run_acceptance(o)) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["kind"] = r.kind;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          out.push_back(d);
        }
        return out;
      },
      py::arg("full") = false, py::arg("seed") = AcceptanceOptions{}.seed, py::arg("only") = std::vector<int>{});
}
