#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "conlat/catalog.hpp"
#include "conlat/duplication.hpp"
#include "conlat/io.hpp"
#include "conlat/lattice.hpp"
#include "conlat/term.hpp"

namespace py = pybind11;
using namespace conlat;

namespace {

std::string label_of(const std::optional<PentagonClass>& c) {
  if (!c) return "none";
  return *c == PentagonClass::K ? "K" : "M1";
}

py::dict report_to_dict(const Report& r) {
  py::dict d;
  d["title"] = r.title;
  d["ok"] = r.ok();
  py::list clauses;
  for (const auto& c : r.clauses) {
    py::dict e;
    e["clause"] = c.clause;
    e["applicable"] = c.applicable;
    e["passed"] = c.passed;
    e["witness"] = c.witness;
    clauses.append(e);
  }
  d["clauses"] = clauses;
  return d;
}

}  // namespace

PYBIND11_MODULE(_conlat, m) {
  m.doc() = "finite universal algebra: congruence lattices and duplication constructions";

  py::register_exception<LimitError>(m, "LimitError");
  py::register_exception<conlat::ParseError>(m, "ParseError");

  py::class_<Operation>(m, "Operation")
      .def(py::init([](const std::string& name, int arity, const std::vector<int>& table) {
             return Operation{name, arity, table};
           }),
           py::arg("name"), py::arg("arity"), py::arg("table"))
      .def_readonly("name", &Operation::name)
      .def_readonly("arity", &Operation::arity)
      .def_readonly("table", &Operation::table);

  py::class_<FiniteAlgebra>(m, "FiniteAlgebra")
      .def(py::init([](const std::string& name, int size, const std::vector<Operation>& ops) {
             FiniteAlgebra a{name, size, ops, {}};
             a.validate();
             return a;
           }),
           py::arg("name"), py::arg("size"), py::arg("ops") = std::vector<Operation>{})
      .def_readonly("name", &FiniteAlgebra::name)
      .def_readonly("size", &FiniteAlgebra::size)
      .def_readonly("ops", &FiniteAlgebra::ops)
      .def("elem_name", &FiniteAlgebra::elem_name)
      .def("emit", &emit_algebra)
      .def_static("parse", py::overload_cast<const std::string&>(&parse_algebra))
      .def_static("load", &load_algebra)
      .def("__repr__", [](const FiniteAlgebra& a) {
        return "<FiniteAlgebra " + a.name + " size=" + std::to_string(a.size) +
               " ops=" + std::to_string(a.ops.size()) + ">";
      });

  py::class_<Congruence>(m, "Congruence")
      .def_static("identity", &Congruence::identity)
      .def_static("total", &Congruence::total)
      .def_static("parse", &parse_partition, py::arg("literal"), py::arg("size"))
      .def("size", &Congruence::size)
      .def("related", &Congruence::related)
      .def("blocks", &Congruence::blocks)
      .def("block_count", &Congruence::block_count)
      .def("is_identity", &Congruence::is_identity)
      .def("is_total", &Congruence::is_total)
      .def("__eq__", [](const Congruence& a, const Congruence& b) { return a == b; })
      .def("__lt__", [](const Congruence& a, const Congruence& b) { return a < b; })
      .def("__hash__",
           [](const Congruence& c) {
             size_t h = 1469598103934665603ull;
             for (int v : c.block_map()) h = (h ^ static_cast<size_t>(v)) * 1099511628211ull;
             return h;
           })
      .def("__str__", &format_partition)
      .def("__repr__", [](const Congruence& c) { return "<Congruence " + format_partition(c) + ">"; });

  m.def("meet", py::overload_cast<const Congruence&, const Congruence&>(&meet));
  m.def("join", py::overload_cast<const Congruence&, const Congruence&>(&join));
  m.def("refines", &refines);
  m.def("comparable", &comparable);
  m.def("is_congruence", &is_congruence);
  m.def("principal_congruence", &principal_congruence, py::arg("algebra"), py::arg("a"), py::arg("b"));
  m.def("enumerate_con", &enumerate_con, py::arg("algebra"), py::arg("limit") = kDefaultMaxCongruences);
  m.def("permute_check", &permute_check, py::arg("theta"), py::arg("phi"), py::arg("k") = 2);
  m.def(
      "compose_pairs",
      [](const Congruence& a, const Congruence& b) { return compose(BinaryRelation::from(a), BinaryRelation::from(b)).pairs(); },
      "pairs of the relational product of two congruences");

  py::class_<PowerSubalgebra>(m, "PowerSubalgebra")
      .def_readonly("algebra", &PowerSubalgebra::algebra)
      .def_readonly("tuples", &PowerSubalgebra::tuples);
  m.def("power_subalgebra", &power_subalgebra, py::arg("algebra"), py::arg("alpha"), py::arg("n") = 2,
        py::arg("max_universe") = kDefaultMaxUniverse);

  py::class_<FiniteLattice>(m, "FiniteLattice")
      .def_static(
          "from_covers",
          [](int n, const std::vector<std::pair<int, int>>& covers, const std::vector<std::string>& labels) {
            return FiniteLattice::from_covers(n, covers, labels);
          },
          py::arg("n"), py::arg("covers"), py::arg("labels") = std::vector<std::string>{})
      .def("size", &FiniteLattice::size)
      .def("leq", &FiniteLattice::leq)
      .def("meet", &FiniteLattice::meet)
      .def("join", &FiniteLattice::join)
      .def("bottom", &FiniteLattice::bottom)
      .def("top", &FiniteLattice::top)
      .def("label", &FiniteLattice::label)
      .def("labels", &FiniteLattice::labels)
      .def("find_label", &FiniteLattice::find_label)
      .def("cover_pairs", &FiniteLattice::cover_pairs)
      .def("height", &FiniteLattice::height)
      .def("dot", [](const FiniteLattice& l, const std::string& name) { return dot(l, name); },
           py::arg("name") = "lattice")
      .def("__repr__", [](const FiniteLattice& l) {
        return "<FiniteLattice size=" + std::to_string(l.size()) + ">";
      });

  m.def("is_modular", &is_modular);
  m.def("is_distributive", &is_distributive);
  m.def("is_meet_semidistributive", &is_meet_semidistributive);
  m.def("is_join_semidistributive", &is_join_semidistributive);
  m.def("is_semidistributive", &is_semidistributive);
  m.def("whitman_w", &whitman_w);
  m.def("is_subdirectly_irreducible", &is_subdirectly_irreducible);
  m.def("isomorphic", &isomorphic);
  m.def("dual", &dual);
  m.def("build_shape", [](const std::string& s, bool loose) { return build_shape(s, CatalogOptions{loose}); },
        py::arg("shape"), py::arg("loose") = false);

  py::class_<Sublattice>(m, "Sublattice")
      .def_readonly("lattice", &Sublattice::lattice)
      .def_readonly("embedding", &Sublattice::embedding);
  m.def("generated_sublattice", &generated_sublattice);
  m.def("interval", &interval);
  m.def("covers", &covers);
  m.def("find_cover_in_interval", &find_cover_in_interval);

  py::class_<ConLattice>(m, "ConLattice")
      .def_readonly("lattice", &ConLattice::lattice)
      .def_readonly("congruences", &ConLattice::congruences)
      .def("index_of", &ConLattice::index_of);
  m.def("lattice_of_congruences", &lattice_of_congruences, py::arg("algebra"), py::arg("gens"),
        py::arg("max_lattice") = kDefaultMaxLattice);
  m.def("con_lattice", [](const FiniteAlgebra& a, long long limit) {
          return close_partitions(enumerate_con(a, limit), limit);
        },
        py::arg("algebra"), py::arg("limit") = kDefaultMaxCongruences,
        "the full congruence lattice of an algebra");

  m.def("eval_inequality",
        [](const std::string& ineq, const FiniteLattice& l, const std::map<std::string, int>& assign) {
          auto [p, q] = parse_inequality(ineq);
          return eval_inequality(p, q, l, assign);
        },
        py::arg("inequality"), py::arg("lattice"), py::arg("assignment"));

  py::class_<Duplication>(m, "Duplication")
      .def_readonly("base", &Duplication::base)
      .def_readonly("alpha", &Duplication::alpha)
      .def_readonly("doubled", &Duplication::doubled)
      .def_readonly("eta0", &Duplication::eta0)
      .def_readonly("eta1", &Duplication::eta1)
      .def("pair_of", [](const Duplication& d, int e) {
            return std::make_pair(d.pair_of[e][0], d.pair_of[e][1]);
          })
      .def("index_of", &Duplication::index_of)
      .def("lift", &Duplication::lift, py::arg("theta"), py::arg("side"));
  m.def("duplicate", &duplicate, py::arg("algebra"), py::arg("alpha"),
        py::arg("max_universe") = kDefaultMaxUniverse);

  py::class_<PentagonConfig>(m, "PentagonConfig")
      .def_readonly("algebra", &PentagonConfig::algebra)
      .def_readonly("zero", &PentagonConfig::zero)
      .def_readonly("gamma", &PentagonConfig::gamma)
      .def_readonly("alpha", &PentagonConfig::alpha)
      .def_readonly("beta", &PentagonConfig::beta)
      .def_readonly("delta", &PentagonConfig::delta);
  m.def("make_pentagon",
        py::overload_cast<const FiniteAlgebra&, const Congruence&, const Congruence&, const Congruence&>(
            &make_pentagon),
        py::arg("algebra"), py::arg("gamma"), py::arg("alpha"), py::arg("beta"));

  py::class_<M3Config>(m, "M3Config")
      .def_readonly("algebra", &M3Config::algebra)
      .def_readonly("bottom", &M3Config::bottom)
      .def_readonly("a", &M3Config::a)
      .def_readonly("b", &M3Config::b)
      .def_readonly("c", &M3Config::c)
      .def_readonly("top", &M3Config::top)
      .def("atoms_pairwise_permute", &M3Config::atoms_pairwise_permute);
  m.def("make_m3", &make_m3, py::arg("algebra"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("find_pentagons", [](const FiniteAlgebra& a, long long max_con, long long max_results) {
          return find_pentagons(a, SearchOptions{max_con, max_results});
        },
        py::arg("algebra"), py::arg("max_con") = kDefaultMaxCongruences, py::arg("max_results") = -1);
  m.def("find_m3s", [](const FiniteAlgebra& a, long long max_con, long long max_results) {
          return find_m3s(a, SearchOptions{max_con, max_results});
        },
        py::arg("algebra"), py::arg("max_con") = kDefaultMaxCongruences, py::arg("max_results") = -1);
  m.def("covers_in_con", &covers_in_con);

  m.def("pentagon_condition", [](const PentagonConfig& cfg) {
    auto r = pentagon_condition(cfg);
    py::dict d;
    d["holds"] = r.holds;
    d["witness"] = r.witness;
    return d;
  });

  m.def("verify_doubling_lemma",
        [](const Duplication& d, const Congruence& th) { return report_to_dict(verify_doubling_lemma(d, th)); });
  m.def("verify_lemma1", [](const PentagonConfig& c) { return report_to_dict(verify_lemma1(c)); });
  m.def("verify_lemma2", [](const PentagonConfig& c) { return report_to_dict(verify_lemma2(c)); });
  m.def("verify_nozero",
        [](const M3Config& c) { return report_to_dict(verify_nozero(c)); });
  m.def("verify_permute",
        [](const M3Config& c) { return report_to_dict(verify_permute(c)); });

  py::class_<ClassifyResult>(m, "ClassifyResult")
      .def_property_readonly("label", [](const ClassifyResult& r) { return label_of(r.label); })
      .def_readonly("dup", &ClassifyResult::dup)
      .def_readonly("lat", &ClassifyResult::lat)
      .def_readonly("catalog", &ClassifyResult::catalog)
      .def_readonly("iso", &ClassifyResult::iso)
      .def_readonly("used", &ClassifyResult::used)
      .def_readonly("refined", &ClassifyResult::refined)
      .def("__repr__", [](const ClassifyResult& r) {
        return "<ClassifyResult label=" + label_of(r.label) +
               " size=" + std::to_string(r.lat.lattice.size()) + ">";
      });
  m.def("classify_pentagon",
        [](const PentagonConfig& cfg, bool refine, const std::string& over) {
          ClassifyOptions opts;
          opts.refine = refine;
          if (over == "gamma") opts.over = ClassifyOptions::Over::Gamma;
          else if (over == "alpha") opts.over = ClassifyOptions::Over::Alpha;
          else if (over != "beta") throw std::invalid_argument("over must be beta, gamma or alpha");
          return classify_pentagon(cfg, opts);
        },
        py::arg("config"), py::arg("refine") = true, py::arg("over") = "beta");

  py::class_<M33Result>(m, "M33Result")
      .def_readonly("dup", &M33Result::dup)
      .def_readonly("lat", &M33Result::lat)
      .def_readonly("iso", &M33Result::iso)
      .def_property_readonly("report", [](const M33Result& r) { return report_to_dict(r.report); });
  m.def("build_m33", &build_m33, py::arg("config"), py::arg("max_universe") = kDefaultMaxUniverse);

  py::class_<RodStep>(m, "RodStep")
      .def_readonly("algebra", &RodStep::algebra)
      .def_readonly("named", &RodStep::named)
      .def_readonly("lat", &RodStep::lat)
      .def_readonly("catalog", &RodStep::catalog)
      .def_readonly("closed", &RodStep::closed)
      .def_readonly("iso_ok", &RodStep::iso_ok)
      .def_readonly("labels_ok", &RodStep::labels_ok)
      .def_readonly("permuting", &RodStep::permuting);
  py::class_<RodsResult>(m, "RodsResult")
      .def_readonly("steps", &RodsResult::steps)
      .def_property_readonly("report", [](const RodsResult& r) { return report_to_dict(r.report); })
      .def_property_readonly("ok", [](const RodsResult& r) { return r.report.ok(); });
  m.def("iterate_rods",
        [](const M3Config& cfg, int n, const std::string& shape) {
          if (shape == "rod") return iterate_rods(cfg, n, ChainShape::Rod);
          if (shape == "snake") return iterate_rods(cfg, n, ChainShape::Snake);
          if (shape.rfind("G:", 0) == 0) return iterate_rods(cfg, shape.substr(2));
          throw std::invalid_argument("shape must be rod, snake or G:<letters>");
        },
        py::arg("config"), py::arg("n"), py::arg("shape") = "rod");
}
