#include "d4plus/serialize.hpp"

#include <json.hpp>
#include <sstream>

#include "d4plus/errors.hpp"

namespace d4 {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

// ----------------------------------------------------------------- writers

ojson partition_node(const Partition& p) {
  ojson blocks = ojson::array();
  for (const auto& b : p.blocks()) blocks.push_back(b);
  return ojson{{"upper", p.upper()}, {"lower", p.lower()}, {"blocks", blocks}};
}

ojson graph_node(const BilabelledGraph& K) {
  ojson edges = ojson::array();
  for (auto [u, v] : K.edges()) edges.push_back({u, v});
  return ojson{{"vertices", K.vertex_count()}, {"edges", edges}, {"inputs", K.inputs()}, {"outputs", K.outputs()}};
}

// ----------------------------------------------------------------- readers

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& node, const char* key, const std::string& path) {
  const std::string at = path.empty() ? "/" : path;
  if (!node.is_object()) throw SchemaError(at + ": expected an object");
  auto it = node.find(key);
  if (it == node.end()) throw SchemaError(at + ": missing key \"" + key + "\"");
  return *it;
}

std::size_t count_at(const json& node, const std::string& path) {
  if (!node.is_number_integer() || node.get<long long>() < 0) {
    throw SchemaError(path + ": expected a non-negative integer");
  }
  return node.get<std::size_t>();
}

const json& array_at(const json& node, const std::string& path) {
  if (!node.is_array()) throw SchemaError(path + ": expected an array");
  return node;
}

Scalar scalar_at(const json& node, const std::string& path) {
  if (node.is_number_integer()) return Scalar(node.get<long>());
  if (!node.is_string()) throw SchemaError(path + ": expected a scalar string \"p/q\"");
  try {
    return parse_scalar(node.get<std::string>());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::vector<std::size_t> index_list(const json& node, const std::string& path) {
  std::vector<std::size_t> out;
  const auto& arr = array_at(node, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(count_at(arr[i], path + "/" + std::to_string(i)));
  return out;
}

Partition partition_at(const json& node, const std::string& path) {
  const std::size_t k = count_at(field(node, "upper", path), path + "/upper");
  const std::size_t l = count_at(field(node, "lower", path), path + "/lower");
  const auto& blocks = array_at(field(node, "blocks", path), path + "/blocks");
  std::vector<std::vector<std::size_t>> bs;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    bs.push_back(index_list(blocks[b], path + "/blocks/" + std::to_string(b)));
  try {
    return Partition::from_blocks(k, l, bs);
  } catch (const SchemaError& e) {
    throw SchemaError((path.empty() ? "/" : path) + ": " + e.what());
  }
}

BilabelledGraph graph_at(const json& node, const std::string& path) {
  const std::size_t n = count_at(field(node, "vertices", path), path + "/vertices");
  const auto& edges = array_at(field(node, "edges", path), path + "/edges");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = path + "/edges/" + std::to_string(i);
    auto pair = index_list(edges[i], p);
    if (pair.size() != 2) throw SchemaError(p + ": an edge needs exactly two endpoints");
    if (pair[0] >= n || pair[1] >= n) throw SchemaError(p + ": endpoint out of range");
    es.emplace_back(pair[0], pair[1]);
  }
  auto a = index_list(field(node, "inputs", path), path + "/inputs");
  auto b = index_list(field(node, "outputs", path), path + "/outputs");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= n) throw SchemaError(path + "/inputs/" + std::to_string(i) + ": vertex out of range");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] >= n) throw SchemaError(path + "/outputs/" + std::to_string(i) + ": vertex out of range");
  return BilabelledGraph(n, std::move(es), std::move(a), std::move(b));
}

}  // namespace

std::string dump_json(const Partition& p) { return partition_node(p).dump(); }

std::string dump_json(const PartitionVector& x) {
  ojson terms = ojson::array();
  for (const auto& [p, c] : x.terms()) terms.push_back(ojson{{"coeff", to_string(c)}, {"partition", partition_node(p)}});
  return ojson{{"upper", x.upper()}, {"lower", x.lower()}, {"terms", terms}}.dump();
}

std::string dump_json(const Tensor& t) {
  ojson entries = ojson::array();
  for (std::size_t r = 0; r < t.entries.rows(); ++r)
    for (std::size_t c = 0; c < t.entries.cols(); ++c)
      if (t.entries(r, c) != 0) entries.push_back({to_string(t.entries(r, c)), r, c});
  return ojson{{"N", t.N}, {"k", t.k}, {"l", t.l}, {"entries", entries}}.dump();
}

std::string dump_json(const BilabelledGraph& K) { return graph_node(K).dump(); }

std::string dump_json(const GraphPool& pool) {
  ojson cells = ojson::object();
  for (const auto& [cell, members] : pool.cells) {
    ojson list = ojson::array();
    for (const auto& [form, g] : members) list.push_back(graph_node(g));
    cells[std::to_string(cell.first) + "," + std::to_string(cell.second)] = list;
  }
  return ojson{{"k0", pool.k0}, {"cells", cells}}.dump();
}

Partition partition_from_json(std::string_view text) { return partition_at(parse(text), ""); }

PartitionVector partition_vector_from_json(std::string_view text) {
  const json doc = parse(text);
  const auto& terms = array_at(field(doc, "terms", ""), "/terms");
  std::optional<std::size_t> k, l;
  if (doc.contains("upper")) k = count_at(doc["upper"], "/upper");
  if (doc.contains("lower")) l = count_at(doc["lower"], "/lower");
  std::vector<std::pair<Partition, Scalar>> parsed;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = "/terms/" + std::to_string(i);
    parsed.emplace_back(partition_at(field(terms[i], "partition", p), p + "/partition"),
                        scalar_at(field(terms[i], "coeff", p), p + "/coeff"));
  }
  if (!k || !l) {
    if (parsed.empty()) throw SchemaError("/: an empty vector needs \"upper\" and \"lower\"");
    k = parsed.front().first.upper();
    l = parsed.front().first.lower();
  }
  PartitionVector x(*k, *l);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    try {
      x.add(parsed[i].first, parsed[i].second);
    } catch (const DimensionError& e) {
      throw SchemaError("/terms/" + std::to_string(i) + ": " + e.what());
    }
  }
  return x;
}

Tensor tensor_from_json(std::string_view text) {
  const json doc = parse(text);
  const std::size_t N = count_at(field(doc, "N", ""), "/N");
  const std::size_t k = count_at(field(doc, "k", ""), "/k");
  const std::size_t l = count_at(field(doc, "l", ""), "/l");
  if (N == 0) throw SchemaError("/N: must be positive");
  checked_volume(N, k + l);
  Tensor t(N, k, l);
  const auto& entries = array_at(field(doc, "entries", ""), "/entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = "/entries/" + std::to_string(i);
    const auto& e = array_at(entries[i], p);
    if (e.size() != 3) throw SchemaError(p + ": expected [\"p/q\", row, col]");
    const auto r = count_at(e[1], p + "/1");
    const auto c = count_at(e[2], p + "/2");
    if (r >= t.entries.rows() || c >= t.entries.cols()) throw SchemaError(p + ": index out of range");
    t.entries(r, c) = scalar_at(e[0], p + "/0");
  }
  return t;
}

BilabelledGraph graph_from_json(std::string_view text) { return graph_at(parse(text), ""); }

GraphPool pool_from_json(std::string_view text) {
  const json doc = parse(text);
  GraphPool pool;
  pool.k0 = count_at(field(doc, "k0", ""), "/k0");
  const auto& cells = field(doc, "cells", "");
  if (!cells.is_object()) throw SchemaError("/cells: expected an object");
  for (const auto& [key, list] : cells.items()) {
    const std::string p = "/cells/" + key;
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw SchemaError(p + ": cell key must look like \"k,l\"");
    std::size_t k = 0, l = 0;
    try {
      k = std::stoul(key.substr(0, comma));
      l = std::stoul(key.substr(comma + 1));
    } catch (const std::exception&) {
      throw SchemaError(p + ": cell key must look like \"k,l\"");
    }
    pool.cells[{k, l}];
    const auto& arr = array_at(list, p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      auto g = graph_at(arr[i], p + "/" + std::to_string(i));
      if (g.k() != k || g.l() != l) throw SchemaError(p + "/" + std::to_string(i) + ": graph does not match its cell");
      pool.insert(g);
    }
  }
  return pool;
}

Matrix matrix_from_json(std::string_view text) {
  const json doc = parse(text);
  if (doc.is_array()) {
    const std::size_t n = doc.size();
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::string p = "/" + std::to_string(r);
      const auto& row = array_at(doc[r], p);
      if (row.size() != n) throw SchemaError(p + ": matrix must be square");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar_at(row[c], p + "/" + std::to_string(c));
    }
    return m;
  }
  const std::size_t n = count_at(field(doc, "N", ""), "/N");
  Matrix m(n, n);
  const auto& entries = array_at(field(doc, "entries", ""), "/entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = "/entries/" + std::to_string(i);
    const auto& e = array_at(entries[i], p);
    if (e.size() != 3) throw SchemaError(p + ": expected [\"p/q\", row, col]");
    const auto r = count_at(e[1], p + "/1");
    const auto c = count_at(e[2], p + "/2");
    if (r >= n || c >= n) throw SchemaError(p + ": index out of range");
    m(r, c) = scalar_at(e[0], p + "/0");
  }
  return m;
}

DocumentKind detect_document(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) return DocumentKind::Unknown;
  if (doc.contains("terms")) return DocumentKind::PartitionVector;
  if (doc.contains("blocks")) return DocumentKind::Partition;
  if (doc.contains("vertices")) return DocumentKind::Graph;
  if (doc.contains("cells")) return DocumentKind::Pool;
  if (doc.contains("entries") && doc.contains("k")) return DocumentKind::Tensor;
  return DocumentKind::Unknown;
}

std::string to_dot(const BilabelledGraph& K, const std::string& name) {
  const auto parity = vertex_parity(K);
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  os << "  node [shape=circle, width=0.25, label=\"\"];\n";
  for (std::size_t v = 0; v < K.vertex_count(); ++v) {
    os << "  v" << v << " [xlabel=\"" << v << "\"";
    if (!parity) os << ", shape=doublecircle";
    else if ((*parity)[v] == 0) os << ", style=filled, fillcolor=black";
    else os << ", style=filled, fillcolor=white";
    os << "];\n";
  }
  for (auto [u, v] : K.edges()) os << "  v" << u << " -- v" << v << " [penwidth=2];\n";
  if (K.k() > 0) {
    os << "  { rank=source;";
    for (std::size_t i = 0; i < K.k(); ++i) os << " a" << i + 1;
    os << " }\n";
  }
  for (std::size_t i = 0; i < K.k(); ++i) {
    os << "  a" << i + 1 << " [shape=plaintext, label=\"a" << i + 1 << "\"];\n";
    os << "  a" << i + 1 << " -- v" << K.inputs()[i] << " [style=dashed];\n";
  }
  if (K.l() > 0) {
    os << "  { rank=sink;";
    for (std::size_t j = 0; j < K.l(); ++j) os << " b" << j + 1;
    os << " }\n";
  }
  for (std::size_t j = 0; j < K.l(); ++j) {
    os << "  b" << j + 1 << " [shape=plaintext, label=\"b" << j + 1 << "\"];\n";
    os << "  v" << K.outputs()[j] << " -- b" << j + 1 << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace d4
