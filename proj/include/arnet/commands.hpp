#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arnet/completion.hpp"
#include "arnet/io.hpp"
#include "arnet/rank_select.hpp"
#include "arnet/types.hpp"

// Command implementations behind the `arnet` binary. Each writes its data
// artifacts into an output directory and throws arnet::Error subclasses on
// failure; the binary maps those to exit code 2.
namespace arnet::cli {

// A network comes either from --input <path> (with --format) or from a
// --gen spec: "bipartite:N", "sandwich:M", or "sbm:<model.json>". The seed
// feeds sampled generators.
struct InputSpec {
  std::string path;
  NetworkFormat format = NetworkFormat::EdgeList;
  std::string gen;
  std::uint64_t seed = 0;
};

SymmetricNetwork resolve_network(const InputSpec& input);

// Parses "a,b,c" or "lo:hi" (inclusive) into ranks; empty -> fallback.
std::vector<Index> parse_k_grid(const std::string& text, Index fallback_lo,
                                Index fallback_hi);

struct DecomposeOptions {
  InputSpec input;
  std::string strategy = "nuclear-min";
  std::optional<Index> rank;
  SvtOptions svt;
  std::string out_dir = ".";
  bool log1p = false;
};

// Writes embeddings.csv and report.json.
void cmd_decompose(const DecomposeOptions& options);

struct MetricsOptions {
  std::string embeddings;
  std::vector<std::string> queries;  // node indices or labels
  Index top_m = 3;
  std::string metric = "cosine";
  std::string out_dir = ".";
};

// Writes metrics.json with the network score, per-node scores, and top
// substitute lists for the queried nodes.
void cmd_metrics(const MetricsOptions& options);

struct BcvCliOptions {
  InputSpec input;
  int folds = 10;
  std::string k_grid;
  std::string out_dir = ".";
};

// Writes bcv.csv and prints the selected rank on stdout.
BcvResult cmd_bcv(const BcvCliOptions& options);

struct BenchmarkOptions {
  InputSpec input;
  std::vector<std::string> strategies;  // empty -> all four
  std::string k_grid;
  SvtOptions svt;
  std::string out_dir = ".";
};

// Writes curves.csv ("strategy,k,normalized_error") and prints, per fidelity
// target in {0.8, 0.9, 0.95}, the minimal rank reaching it per strategy.
void cmd_benchmark(const BenchmarkOptions& options);

struct GenOptions {
  std::string gen;
  std::string out_path;
  NetworkFormat format = NetworkFormat::EdgeList;
  std::uint64_t seed = 0;
};

// Writes a generated network as a standard network file.
void cmd_gen(const GenOptions& options);

}  // namespace arnet::cli
