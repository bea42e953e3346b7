#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "d4plus/bigraph.hpp"
#include "d4plus/checks.hpp"
#include "d4plus/enumerator.hpp"
#include "d4plus/errors.hpp"
#include "d4plus/graph_functor.hpp"
#include "d4plus/partition.hpp"
#include "d4plus/serialize.hpp"
#include "d4plus/tensor.hpp"

namespace py = pybind11;
using namespace d4;

namespace {

// Scalars cross the boundary as fractions.Fraction; ints, Fractions and "p/q" strings are accepted.
py::object to_py(const Scalar& s) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(s));
}

Scalar from_py(const py::handle& h) { return parse_scalar(py::str(h).cast<std::string>()); }

Matrix matrix_from_py(const py::sequence& rows) {
  const std::size_t n = rows.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = rows[r].cast<py::sequence>();
    if (row.size() != n) throw DimensionError("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = from_py(row[c]);
  }
  return m;
}

py::dict report_dict(const ConditionReport& r) {
  py::dict d;
  d["planar"] = r.planar;
  d["even_degrees"] = r.even_degrees;
  d["bipartite"] = r.bipartite;
  d["no_contractible"] = r.no_contractible;
  d["no_multi_edges"] = r.no_multi_edges;
  d["boundary_touching"] = r.boundary_touching;
  d["in_C"] = r.in_scriptC();
  d["all"] = r.all();
  d["description"] = r.describe();
  return d;
}

}  // namespace

PYBIND11_MODULE(_d4plus, m) {
  m.doc() = "Exact partition and bilabelled-graph computations for D4+";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<ArityError>(m, "ArityError", base);
  py::register_exception<CapacityError>(m, "CapacityError", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<SchemaError>(m, "SchemaError", base);

  // ------------------------------------------------------------ partitions
  py::class_<Partition>(m, "Partition")
      .def(py::init<std::size_t, std::size_t, std::vector<int>>(), py::arg("upper"), py::arg("lower"),
           py::arg("labels"))
      .def_static("from_blocks", &Partition::from_blocks, py::arg("upper"), py::arg("lower"), py::arg("blocks"))
      .def_static("from_json", &partition_from_json)
      .def_property_readonly("upper", &Partition::upper)
      .def_property_readonly("lower", &Partition::lower)
      .def_property_readonly("labels", &Partition::labels)
      .def_property_readonly("block_count", &Partition::block_count)
      .def("blocks", &Partition::blocks)
      .def("to_json", [](const Partition& p) { return dump_json(p); })
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__hash__", [](const Partition& p) { return py::hash(py::str(p.str())); })
      .def("__repr__", &Partition::str);

  py::class_<PartitionVector>(m, "PartitionVector")
      .def(py::init<std::size_t, std::size_t>(), py::arg("upper") = 0, py::arg("lower") = 0)
      .def(py::init([](const Partition& p, const py::object& c) { return PartitionVector(p, from_py(c)); }),
           py::arg("partition"), py::arg("coeff") = 1)
      .def_static("from_json", &partition_vector_from_json)
      .def_property_readonly("upper", &PartitionVector::upper)
      .def_property_readonly("lower", &PartitionVector::lower)
      .def("terms",
           [](const PartitionVector& x) {
             py::list out;
             for (const auto& [p, c] : x.terms()) out.append(py::make_tuple(to_py(c), p));
             return out;
           })
      .def("coefficient", [](const PartitionVector& x, const Partition& p) { return to_py(x.coefficient(p)); })
      .def("add", [](PartitionVector& x, const Partition& p, const py::object& c) { x.add(p, from_py(c)); })
      .def("to_json", [](const PartitionVector& x) { return dump_json(x); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def("__rmul__", [](const PartitionVector& x, const py::object& s) { return from_py(s) * x; })
      .def("__mul__", [](const PartitionVector& x, const py::object& s) { return from_py(s) * x; })
      .def(py::self == py::self)
      .def("__len__", &PartitionVector::term_count)
      .def("__repr__", [](const PartitionVector& x) { return dump_json(x); });

  m.def("tensor", py::overload_cast<const Partition&, const Partition&>(&tensor));
  m.def("tensor", py::overload_cast<const PartitionVector&, const PartitionVector&>(&tensor));
  m.def("compose_partitions", [](const Partition& q, const Partition& p) {
    auto c = compose(q, p);
    return py::make_tuple(c.partition, c.loops);
  }, "q∘p as (partition, number of closed loops)");
  m.def("compose", [](const PartitionVector& y, const PartitionVector& x, const py::object& N) {
    return compose(y, x, from_py(N));
  }, py::arg("y"), py::arg("x"), py::arg("N"));
  m.def("involution", py::overload_cast<const Partition&>(&involution));
  m.def("involution", py::overload_cast<const PartitionVector&>(&involution));
  m.def("rotate_right", py::overload_cast<const Partition&>(&rotate_right));
  m.def("rotate_left", py::overload_cast<const Partition&>(&rotate_left));
  m.def("hat", py::overload_cast<const Partition&>(&hat));
  m.def("hat", py::overload_cast<const PartitionVector&>(&hat));
  m.def("conjugate_by_tau", [](const PartitionVector& x, const py::object& N) { return conjugate_by_tau(x, from_py(N)); });
  m.def("mobius", [](const Partition& p, const Partition& q) { return to_py(mobius(p, q)); });
  m.def("is_noncrossing", &is_noncrossing);
  m.def("all_partitions", &all_partitions);

  auto parts_m = m.def_submodule("parts", "Named partitions");
  parts_m.def("empty", &parts::empty);
  parts_m.def("singleton", &parts::singleton);
  parts_m.def("pair", &parts::pair);
  parts_m.def("uppair", &parts::uppair);
  parts_m.def("identity", &parts::identity);
  parts_m.def("disconnecter", &parts::disconnecter);
  parts_m.def("crossing", &parts::crossing);
  parts_m.def("double_identity", &parts::double_identity);
  parts_m.def("connecter", &parts::connecter);
  parts_m.def("fourblock", &parts::fourblock);
  parts_m.def("singletons", &parts::singletons);
  parts_m.def("tau", [](const py::object& N) { return parts::tau(from_py(N)); });

  // --------------------------------------------------------------- tensors
  py::class_<Tensor>(m, "Tensor")
      .def_static("from_json", &tensor_from_json)
      .def_readonly("N", &Tensor::N)
      .def_readonly("k", &Tensor::k)
      .def_readonly("l", &Tensor::l)
      .def("entry", [](const Tensor& t, std::size_t r, std::size_t c) { return to_py(t.entries(r, c)); })
      .def("nonzeros",
           [](const Tensor& t) {
             py::list out;
             for (std::size_t r = 0; r < t.entries.rows(); ++r)
               for (std::size_t c = 0; c < t.entries.cols(); ++c)
                 if (t.entries(r, c) != 0) out.append(py::make_tuple(r, c, to_py(t.entries(r, c))));
             return out;
           })
      .def("to_json", [](const Tensor& t) { return dump_json(t); })
      .def(py::self == py::self);

  m.def("evaluate", py::overload_cast<const Partition&, std::size_t>(&evaluate), py::arg("p"), py::arg("N"));
  m.def("evaluate", py::overload_cast<const PartitionVector&, std::size_t>(&evaluate), py::arg("x"), py::arg("N"));
  m.def("evaluate_hat", &evaluate_hat, py::arg("p"), py::arg("N"));
  m.def("tensor_cap", &tensor_cap);

  // ---------------------------------------------------------------- graphs
  py::class_<BilabelledGraph>(m, "BilabelledGraph")
      .def(py::init<std::size_t, std::vector<Edge>, std::vector<std::size_t>, std::vector<std::size_t>>(),
           py::arg("vertices"), py::arg("edges"), py::arg("inputs"), py::arg("outputs"))
      .def_static("from_json", &graph_from_json)
      .def_property_readonly("vertex_count", &BilabelledGraph::vertex_count)
      .def_property_readonly("edges", &BilabelledGraph::edges)
      .def_property_readonly("inputs", &BilabelledGraph::inputs)
      .def_property_readonly("outputs", &BilabelledGraph::outputs)
      .def_property_readonly("k", &BilabelledGraph::k)
      .def_property_readonly("l", &BilabelledGraph::l)
      .def("degree", &BilabelledGraph::degree)
      .def("extended_degree", &BilabelledGraph::extended_degree)
      .def("is_connected", &BilabelledGraph::is_connected)
      .def("to_json", [](const BilabelledGraph& K) { return dump_json(K); })
      .def("to_dot", &to_dot, py::arg("name") = "K")
      .def(py::self == py::self)
      .def("__repr__", [](const BilabelledGraph& K) { return to_string(K); });

  auto graphs_m = m.def_submodule("graphs", "Named bilabelled graphs");
  graphs_m.def("null_graph", &graphs::null_graph);
  graphs_m.def("M", &graphs::M, py::arg("k"), py::arg("l"));
  graphs_m.def("X", &graphs::X, py::arg("k"), py::arg("l"));
  graphs_m.def("edge", &graphs::edge);
  graphs_m.def("double_edge", &graphs::double_edge);

  m.def("from_partition", &from_partition);
  m.def("kernel_partition", &kernel_partition);
  m.def("tensor", py::overload_cast<const BilabelledGraph&, const BilabelledGraph&>(&tensor));
  m.def("compose", py::overload_cast<const BilabelledGraph&, const BilabelledGraph&>(&compose), py::arg("H"),
        py::arg("K"));
  m.def("involution", py::overload_cast<const BilabelledGraph&>(&involution));
  m.def("rotate_right", py::overload_cast<const BilabelledGraph&>(&rotate_right));
  m.def("rotate_left", py::overload_cast<const BilabelledGraph&>(&rotate_left));
  m.def("is_planar", &is_planar_bilabelled);
  m.def("check_conditions", [](const BilabelledGraph& K) { return report_dict(check_conditions(K)); });
  m.def("two_path_contract", [](const BilabelledGraph& K, std::size_t v) {
    auto r = two_path_contract(K, v);
    return py::make_tuple(r.graph, r.loop_created);
  });
  m.def("normalize", [](const BilabelledGraph& K, const py::object& N) {
    auto r = normalize(K, from_py(N));
    return py::make_tuple(to_py(r.factor), r.graph, r.loop_created);
  }, "(factor, graph, loop_created)");
  m.def("canonical_form", &canonical_form);
  m.def("are_isomorphic", &are_isomorphic);
  m.def("three_connectivity_check", &three_connectivity_check);

  m.def("evaluate_TA", [](const BilabelledGraph& K, const py::object& A, std::optional<std::size_t> N) {
    if (py::isinstance<py::str>(A)) {
      if (A.cast<std::string>() != "tau") throw PreconditionError("A must be \"tau\" or a square matrix");
      return evaluate_TA(K, tau_matrix(N.value_or(4)));
    }
    return evaluate_TA(K, matrix_from_py(A.cast<py::sequence>()));
  }, py::arg("K"), py::arg("A") = "tau", py::arg("N") = py::none());
  m.def("evaluate_Fpi", [](const BilabelledGraph& K, const py::object& alpha, const py::object& beta,
                           const py::object& N) { return evaluate_Fpi(K, from_py(alpha), from_py(beta), from_py(N)); },
        py::arg("K"), py::arg("alpha"), py::arg("beta"), py::arg("N"));
  m.def("evaluate_Ftau", [](const BilabelledGraph& K, const py::object& N) {
    const Scalar n = from_py(N);
    return evaluate_Fpi(K, parts::tau(n), n);
  });
  m.def("consistency_check", &consistency_check, py::arg("K"), py::arg("N"));

  // ----------------------------------------------------------- enumeration
  py::class_<GraphPool>(m, "GraphPool")
      .def_static("from_json", &pool_from_json)
      .def_readonly("k0", &GraphPool::k0)
      .def_readonly("sweeps", &GraphPool::sweeps)
      .def("count", &GraphPool::count)
      .def("members", &GraphPool::members)
      .def("contains", &GraphPool::contains)
      .def("counts",
           [](const GraphPool& pool) {
             py::dict out;
             for (const auto& r : counts(pool)) out[py::make_tuple(r.k, r.l)] = r.count;
             return out;
           })
      .def("counts_csv", [](const GraphPool& pool) { return counts_csv(counts(pool)); })
      .def("to_json", [](const GraphPool& pool) { return dump_json(pool); });

  m.def("algorithm_A", [](std::size_t k0) { return algorithm_A(k0); }, py::arg("k0"));
  m.def("brute_force_C", &brute_force_C, py::arg("k"), py::arg("l"), py::arg("max_vertices"), py::arg("max_edges"));
  m.def("boundary_word", [](const BilabelledGraph& K) { return boundary_word(K).str(); });
  m.def("canonical_word", [](const std::string& w) { return Word::parse(w).canonical().str(); });
  m.def("apply_rule_A", [](const std::string& w, std::size_t pos, std::size_t l) {
    return apply_rule_A(Word::parse(w), pos, l).str();
  });
  m.def("apply_rule_B", [](const std::string& w, std::size_t pos, std::size_t l) {
    return apply_rule_B(Word::parse(w), pos, l).str();
  });
  m.def("is_infinitely_iterable", [](const std::string& w) { return is_infinitely_iterable(Word::parse(w)); });

  // ---------------------------------------------------------------- checks
  auto result_list = [](const std::vector<CheckResult>& rs) {
    py::list out;
    for (const auto& r : rs) {
      py::dict d;
      d["id"] = r.id;
      d["title"] = r.title;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      d["seconds"] = r.seconds;
      out.append(d);
    }
    return out;
  };
  m.def("run_acceptance", [result_list]() { return result_list(run_acceptance()); });
  m.def("run_suite", [result_list](const std::string& s) { return result_list(run_suite(s)); });
}
