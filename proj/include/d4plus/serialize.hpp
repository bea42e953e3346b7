#pragma once

#include <string>
#include <string_view>

#include "d4plus/bigraph.hpp"
#include "d4plus/enumerator.hpp"
#include "d4plus/exactnum.hpp"
#include "d4plus/partition.hpp"
#include "d4plus/tensor.hpp"

namespace d4 {

// Writers produce compact JSON with a fixed key order; scalars are "p/q" strings.
std::string dump_json(const Partition& p);
std::string dump_json(const PartitionVector& x);
std::string dump_json(const Tensor& t);
std::string dump_json(const BilabelledGraph& K);
std::string dump_json(const GraphPool& pool);

// Readers throw SchemaError with a JSON-pointer-like location, e.g. "/blocks/2/0".
Partition partition_from_json(std::string_view text);
PartitionVector partition_vector_from_json(std::string_view text);
Tensor tensor_from_json(std::string_view text);
BilabelledGraph graph_from_json(std::string_view text);
GraphPool pool_from_json(std::string_view text);
/// Square matrix as {"N": n, "entries": [["p/q", row, col], ...]} or as an array of rows.
Matrix matrix_from_json(std::string_view text);

enum class DocumentKind { Partition, PartitionVector, Graph, Tensor, Pool, Unknown };
/// Guesses the schema from the top-level keys.
DocumentKind detect_document(std::string_view text);

/// Graphviz rendering: even vertices filled, odd hollow, boundary strings as
/// pendant half-edges labelled a1.. and b1...
std::string to_dot(const BilabelledGraph& K, const std::string& name = "K");

}  // namespace d4
