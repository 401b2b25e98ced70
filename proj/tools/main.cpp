#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "arnet/commands.hpp"

namespace {

// --seed wins; otherwise the AR_SEED environment variable; otherwise 0.
std::uint64_t env_seed() {
  const char* env = std::getenv("AR_SEED");
  if (!env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return 0;
  return v;
}

void add_input_flags(CLI::App* cmd, arnet::cli::InputSpec& input,
                     std::string& format) {
  cmd->add_option("--input", input.path, "network file to load");
  cmd->add_option("--format", format,
                  "input format: edge-list, coord, or dense-csv")
      ->check(CLI::IsMember({"edge-list", "coord", "dense-csv"}));
  cmd->add_option("--gen", input.gen,
                  "synthetic input: bipartite:N, sandwich:M, or sbm:model.json");
}

void add_svt_flags(CLI::App* cmd, arnet::SvtOptions& svt) {
  cmd->add_option("--tau", svt.tau, "shrinkage threshold (default 5n)");
  cmd->add_option("--step", svt.step,
                  "dual step size (default 1.2 n^2/(n^2-n))");
  cmd->add_option("--tol", svt.tol, "relative residual tolerance");
  cmd->add_option("--max-iter", svt.max_iter, "iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attract-repel decomposition of undirected networks"};
  app.require_subcommand(1);
  app.fallthrough();  // let --seed appear after the subcommand name too

  std::uint64_t seed = env_seed();
  app.add_option("--seed", seed, "RNG seed (or env AR_SEED)");

  arnet::cli::DecomposeOptions dec;
  std::string dec_format = "edge-list";
  auto* decompose =
      app.add_subcommand("decompose", "embed a network as attract/repel factors");
  add_input_flags(decompose, dec.input, dec_format);
  decompose->add_option("--strategy", dec.strategy,
                        "diagonal completion: nuclear-min, psd-nuclear-min, "
                        "zero-diag, or degree-diag");
  Eigen::Index dec_rank = -1;
  decompose->add_option("--rank", dec_rank, "split rank k (default: all nonzero)");
  decompose->add_flag("--log1p", dec.log1p, "apply log(1+c) to the weights");
  add_svt_flags(decompose, dec.svt);
  decompose->add_option("--out-dir", dec.out_dir, "output directory");

  arnet::cli::MetricsOptions met;
  auto* metrics =
      app.add_subcommand("metrics", "similarity scores from an embedding file");
  metrics->add_option("--embeddings", met.embeddings, "embeddings.csv path")
      ->required();
  metrics->add_option("--queries", met.queries,
                      "node indices or labels to rank substitutes for")
      ->delimiter(',');
  metrics->add_option("--top", met.top_m, "neighbors per query");
  metrics->add_option("--metric", met.metric, "cosine or dot");
  metrics->add_option("--out-dir", met.out_dir, "output directory");

  arnet::cli::BcvCliOptions bcv;
  std::string bcv_format = "edge-list";
  auto* bcv_cmd =
      app.add_subcommand("bcv", "bi-cross-validation rank selection");
  add_input_flags(bcv_cmd, bcv.input, bcv_format);
  bcv_cmd->add_option("--folds", bcv.folds, "fold count");
  bcv_cmd->add_option("--k-grid", bcv.k_grid, "ranks to score: lo:hi or a,b,c");
  bcv_cmd->add_option("--out-dir", bcv.out_dir, "output directory");

  arnet::cli::BenchmarkOptions bench;
  std::string bench_format = "edge-list";
  auto* benchmark = app.add_subcommand(
      "benchmark", "error curves per completion strategy");
  add_input_flags(benchmark, bench.input, bench_format);
  benchmark->add_option("--strategies", bench.strategies,
                        "strategies to compare (default: all)")
      ->delimiter(',');
  benchmark->add_option("--k-grid", bench.k_grid,
                        "ranks to evaluate: lo:hi or a,b,c");
  add_svt_flags(benchmark, bench.svt);
  benchmark->add_option("--out-dir", bench.out_dir, "output directory");

  arnet::cli::GenOptions gen;
  std::string gen_format = "edge-list";
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic network file");
  gen_cmd->add_option("spec", gen.gen,
                      "bipartite:N, sandwich:M, or sbm:model.json")
      ->required();
  gen_cmd->add_option("--out", gen.out_path, "output file")->required();
  gen_cmd->add_option("--format", gen_format,
                      "output format: edge-list, coord, or dense-csv")
      ->check(CLI::IsMember({"edge-list", "coord", "dense-csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (decompose->parsed()) {
      dec.input.format = arnet::parse_network_format(dec_format);
      dec.input.seed = seed;
      if (dec_rank >= 0) dec.rank = dec_rank;
      arnet::cli::cmd_decompose(dec);
    } else if (metrics->parsed()) {
      arnet::cli::cmd_metrics(met);
    } else if (bcv_cmd->parsed()) {
      bcv.input.format = arnet::parse_network_format(bcv_format);
      bcv.input.seed = seed;
      arnet::cli::cmd_bcv(bcv);
    } else if (benchmark->parsed()) {
      bench.input.format = arnet::parse_network_format(bench_format);
      bench.input.seed = seed;
      arnet::cli::cmd_benchmark(bench);
    } else if (gen_cmd->parsed()) {
      gen.format = arnet::parse_network_format(gen_format);
      gen.seed = seed;
      arnet::cli::cmd_gen(gen);
    }
  } catch (const arnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
