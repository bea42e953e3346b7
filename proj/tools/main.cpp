#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "d4plus/checks.hpp"
#include "d4plus/enumerator.hpp"
#include "d4plus/errors.hpp"
#include "d4plus/graph_functor.hpp"
#include "d4plus/serialize.hpp"
#include "d4plus/tensor.hpp"

namespace fs = std::filesystem;
using namespace d4;

namespace {

constexpr std::size_t kMaxK0 = 10;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

int cmd_enumerate(std::size_t k0, const std::string& out, const std::string& format) {
  if (k0 > kMaxK0) throw CapacityError("k0 above " + std::to_string(kMaxK0) + " is not supported");
  const auto pool = algorithm_A(k0);
  if (!out.empty()) {
    if (format == "json") {
      write_file(out, dump_json(pool) + "\n");
    } else {
      fs::create_directories(out);
      write_file(fs::path(out) / "pool.json", dump_json(pool) + "\n");
      for (const auto& [cell, graphs] : pool.cells) {
        std::size_t i = 0;
        for (const auto& [form, K] : graphs) {
          const std::string name =
              "C" + std::to_string(cell.first) + "_" + std::to_string(cell.second) + "_" + std::to_string(i++);
          write_file(fs::path(out) / (name + ".dot"), to_dot(K, name));
        }
      }
    }
  }
  std::cout << counts_csv(counts(pool));
  return 0;
}

int cmd_count(std::size_t k0) {
  if (k0 > kMaxK0) throw CapacityError("k0 above " + std::to_string(kMaxK0) + " is not supported");
  std::cout << counts_csv(counts(algorithm_A(k0)));
  return 0;
}

int cmd_dims(std::size_t N, std::size_t max_points, const std::string& report) {
  const auto pool = algorithm_A(max_points);
  const auto rows = dims_report(pool, N, max_points);
  const auto csv = dims_csv(rows);
  if (!report.empty()) write_file(report, csv);
  std::cout << csv;
  for (const auto& r : rows) {
    std::cerr << "k=" << r.k << ": rank " << r.rank << " of " << r.count
              << (r.rank == r.count ? " (independent)" : " (dependent)");
    if (r.classical) std::cerr << ", classical D4 fixed space " << *r.classical;
    std::cerr << '\n';
  }
  if (N != 4) std::cerr << "note: the quotient category has a known fibre functor only at N=4\n";
  return 0;
}

int cmd_verify(const std::string& suite) {
  std::size_t failed = 0;
  const auto results = run_suite(suite);
  for (const auto& r : results) {
    std::cout << format_result(r) << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int cmd_eval(const std::string& input, std::optional<std::size_t> n_flag, const std::string& a_flag, bool use_hat) {
  const auto text = read_input(input);
  const auto kind = detect_document(text);
  std::size_t N = n_flag.value_or(4);
  if (kind == DocumentKind::Graph) {
    Matrix A;
    if (a_flag == "tau") {
      A = tau_matrix(N);
    } else {
      A = matrix_from_json(read_input(a_flag));
      if (n_flag && *n_flag != A.rows()) throw DimensionError("--N disagrees with the size of the matrix given by --A");
    }
    if (use_hat) throw PreconditionError("--hat applies to a single partition");
    std::cout << dump_json(evaluate_TA(graph_from_json(text), A)) << '\n';
    return 0;
  }
  if (kind == DocumentKind::Partition) {
    const auto p = partition_from_json(text);
    std::cout << dump_json(use_hat ? evaluate_hat(p, N) : evaluate(p, N)) << '\n';
    return 0;
  }
  if (kind == DocumentKind::PartitionVector) {
    if (use_hat) throw PreconditionError("--hat applies to a single partition");
    std::cout << dump_json(evaluate(partition_vector_from_json(text), N)) << '\n';
    return 0;
  }
  throw SchemaError("/: expected a graph, partition or partition vector document");
}

int cmd_export_dot(const std::string& input, const std::string& name) {
  std::cout << to_dot(graph_from_json(read_input(input)), name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for the D4+ graph and partition categories"};
  app.require_subcommand(1);

  std::size_t k0 = 8;
  std::string out, format = "json";
  auto* enumerate = app.add_subcommand("enumerate", "Run algorithm A, print counts, optionally write the pool");
  enumerate->add_option("--k0", k0, "Largest k+l")->capture_default_str();
  enumerate->add_option("--out", out, "Pool JSON file (json) or output directory (dot)");
  enumerate->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();

  std::size_t count_k0 = 8;
  auto* count = app.add_subcommand("count", "Print the k,l,count table");
  count->add_option("--k0", count_k0, "Largest k+l")->capture_default_str();

  std::size_t dims_N = 4, max_points = 6;
  std::string report;
  auto* dims = app.add_subcommand("dims", "Rank of the C(0,k) images under T^A with A = T(tau)");
  dims->add_option("--N", dims_N, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  dims->add_option("--max-points", max_points, "Largest k")->capture_default_str();
  dims->add_option("--report", report, "Also write the CSV here");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "identities, functor, enumeration, words or all")
      ->check(CLI::IsMember({"identities", "functor", "enumeration", "words", "all"}))
      ->capture_default_str();

  std::string input, a_flag = "tau";
  std::optional<std::size_t> eval_N;
  bool use_hat = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a graph, partition or partition vector to a tensor");
  eval->add_option("--input", input, "JSON file, or - for stdin")->required();
  eval->add_option("--N", eval_N, "Dimension (default 4)")->check(CLI::PositiveNumber);
  eval->add_option("--A", a_flag, "tau, or a JSON matrix file")->capture_default_str();
  eval->add_flag("--hat", use_hat, "Use the hat evaluation of a partition");

  std::string dot_input, dot_name = "K";
  auto* export_dot = app.add_subcommand("export-dot", "Render a graph JSON file as DOT");
  export_dot->add_option("--input", dot_input, "JSON file, or - for stdin")->required();
  export_dot->add_option("--name", dot_name, "Graph name")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) return cmd_enumerate(k0, out, format);
    if (*count) return cmd_count(count_k0);
    if (*dims) return cmd_dims(dims_N, max_points, report);
    if (*verify) return cmd_verify(suite);
    if (*eval) return cmd_eval(input, eval_N, a_flag, use_hat);
    if (*export_dot) return cmd_export_dot(dot_input, dot_name);
  } catch (const d4::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
