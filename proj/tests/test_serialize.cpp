#include <doctest.h>

#include <functional>
#include <random>

#include "d4plus/enumerator.hpp"
#include "d4plus/errors.hpp"
#include "d4plus/serialize.hpp"

using namespace d4;

namespace {

std::string schema_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("partition JSON") {
  const auto p = parts::crossing();
  CHECK(dump_json(p) == R"({"upper":2,"lower":2,"blocks":[[0,3],[1,2]]})");
  CHECK(partition_from_json(dump_json(p)) == p);
  for (const auto& q : all_partitions(2, 3)) CHECK(partition_from_json(dump_json(q)) == q);
  CHECK(partition_from_json(R"({"upper":0,"lower":3,"blocks":[[2],[0,1]]})") == Partition(0, 3, {0, 0, 1}));
  CHECK(starts_with(schema_message([] { partition_from_json(R"({"upper":0,"lower":2,"blocks":[[0],[1,"x"]]})"); }),
                    "/blocks/1/1:"));
  CHECK(starts_with(schema_message([] { partition_from_json(R"({"upper":0,"blocks":[]})"); }), "/: missing key"));
  CHECK_THROWS_AS(partition_from_json(R"({"upper":0,"lower":2,"blocks":[[0]]})"), SchemaError);
  CHECK_THROWS_AS(partition_from_json(R"({"upper":0,"lower":2,"blocks":[[0,1],[1]]})"), SchemaError);
  CHECK_THROWS_AS(partition_from_json("{"), SchemaError);
}

TEST_CASE("partition vector JSON") {
  const auto t = parts::tau(4);
  const auto text = dump_json(t);
  CHECK(text.find(R"("coeff":"-1/2")") != std::string::npos);
  CHECK(partition_vector_from_json(text) == t);
  const PartitionVector zero(0, 4);
  CHECK(partition_vector_from_json(dump_json(zero)) == zero);
  CHECK(partition_vector_from_json(
            R"({"terms":[{"coeff":"1/3","partition":{"upper":0,"lower":2,"blocks":[[0,1]]}}]})") ==
        PartitionVector(parts::pair(), Scalar(1) / 3));
  CHECK(starts_with(schema_message([] {
                      partition_vector_from_json(
                          R"({"terms":[{"coeff":"1/0","partition":{"upper":0,"lower":2,"blocks":[[0,1]]}}]})");
                    }),
                    "/terms/0/coeff:"));
  CHECK(starts_with(schema_message([] {
                      partition_vector_from_json(R"({"terms":[
                        {"coeff":"1","partition":{"upper":0,"lower":2,"blocks":[[0,1]]}},
                        {"coeff":"1","partition":{"upper":1,"lower":1,"blocks":[[0,1]]}}]})");
                    }),
                    "/terms/1:"));
  CHECK_THROWS_AS(partition_vector_from_json(R"({"terms":[]})"), SchemaError);
}

TEST_CASE("tensor JSON lists nonzeros") {
  const auto t = evaluate(parts::pair(), 3);
  const auto text = dump_json(t);
  CHECK(text == R"({"N":3,"k":0,"l":2,"entries":[["1",0,0],["1",4,0],["1",8,0]]})");
  CHECK(tensor_from_json(text) == t);
  const auto h = evaluate_hat(parts::singletons(3), 3);
  CHECK(tensor_from_json(dump_json(h)) == h);
  CHECK(starts_with(schema_message([] { tensor_from_json(R"({"N":2,"k":0,"l":1,"entries":[["1",2,0]]})"); }),
                    "/entries/0:"));
  CHECK_THROWS_AS(tensor_from_json(R"({"N":0,"k":0,"l":1,"entries":[]})"), SchemaError);
}

TEST_CASE("graph JSON") {
  const auto K = compose(graphs::X(1, 3), graphs::double_edge());
  CHECK(graph_from_json(dump_json(K)) == K);
  CHECK(dump_json(graphs::edge()) == R"({"vertices":2,"edges":[[0,1]],"inputs":[0],"outputs":[1]})");
  std::mt19937 gen(71);
  for (int i = 0; i < 50; ++i) {
    std::uniform_int_distribution<std::size_t> v(0, 3);
    std::vector<Edge> es;
    for (int e = 0; e < i % 6; ++e) es.emplace_back(v(gen), v(gen));
    const BilabelledGraph G(4, es, {v(gen)}, {v(gen), v(gen)});
    CHECK(graph_from_json(dump_json(G)) == G);
  }
  CHECK(starts_with(
      schema_message([] { graph_from_json(R"({"vertices":2,"edges":[[0,1],[0,1],[0,1],[0,2]],"inputs":[],"outputs":[]})"); }),
      "/edges/3: endpoint out of range"));
  CHECK(starts_with(schema_message([] { graph_from_json(R"({"vertices":2,"edges":[[0]],"inputs":[],"outputs":[]})"); }),
                    "/edges/0:"));
  CHECK(starts_with(schema_message([] { graph_from_json(R"({"vertices":2,"edges":[],"inputs":[0],"outputs":[1,5]})"); }),
                    "/outputs/1:"));
  CHECK(starts_with(schema_message([] { graph_from_json(R"({"vertices":-1,"edges":[],"inputs":[],"outputs":[]})"); }),
                    "/vertices:"));
}

TEST_CASE("pool JSON") {
  const auto pool = algorithm_A(4);
  const auto text = dump_json(pool);
  CHECK(text.find(R"("0,4":[)") != std::string::npos);
  const auto back = pool_from_json(text);
  CHECK(back.k0 == 4);
  CHECK(back.cells == pool.cells);
  CHECK(starts_with(schema_message([] { pool_from_json(R"({"k0":2,"cells":{"0,2":[{"vertices":1,"edges":[],"inputs":[0],"outputs":[0]}]}})"); }),
                    "/cells/0,2/0:"));
  CHECK(starts_with(schema_message([] { pool_from_json(R"({"k0":2,"cells":{"02":[]}})"); }), "/cells/02:"));
}

TEST_CASE("matrix JSON") {
  const auto m = matrix_from_json(R"([["1","-1/2"],["-1/2",1]])");
  CHECK(m(0, 1) == Scalar(-1) / 2);
  CHECK(m(1, 1) == 1);
  const auto sparse = matrix_from_json(R"({"N":3,"entries":[["2",0,2]]})");
  CHECK(sparse.rows() == 3);
  CHECK(sparse(0, 2) == 2);
  CHECK(sparse(2, 0) == 0);
  CHECK(starts_with(schema_message([] { matrix_from_json(R"([["1","2"],["3"]])"); }), "/1:"));
}

TEST_CASE("document detection") {
  CHECK(detect_document(dump_json(parts::pair())) == DocumentKind::Partition);
  CHECK(detect_document(dump_json(parts::tau(4))) == DocumentKind::PartitionVector);
  CHECK(detect_document(dump_json(graphs::edge())) == DocumentKind::Graph);
  CHECK(detect_document(dump_json(evaluate(parts::pair(), 2))) == DocumentKind::Tensor);
  CHECK(detect_document(dump_json(algorithm_A(2))) == DocumentKind::Pool);
  CHECK(detect_document("[1,2]") == DocumentKind::Unknown);
}

TEST_CASE("DOT rendering") {
  const auto dot = to_dot(graphs::X(1, 2), "X12");
  CHECK(starts_with(dot, "graph \"X12\" {"));
  // Centre odd (hollow), leaves even (filled).
  CHECK(dot.find("v0 [xlabel=\"0\", style=filled, fillcolor=white]") != std::string::npos);
  CHECK(dot.find("v1 [xlabel=\"1\", style=filled, fillcolor=black]") != std::string::npos);
  CHECK(dot.find("a1 -- v1 [style=dashed]") != std::string::npos);
  CHECK(dot.find("v3 -- b2 [style=dashed]") != std::string::npos);
  CHECK(dot.find("v0 -- v1") != std::string::npos);
  CHECK(dot.find("label=\"b2\"") != std::string::npos);
  CHECK(dot.find("a2") == std::string::npos);
  // No bipartition: plain double circles.
  CHECK(to_dot(graphs::edge()).find("doublecircle") != std::string::npos);
}
