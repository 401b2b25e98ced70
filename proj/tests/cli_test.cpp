#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "arnet/commands.hpp"
#include "arnet/errors.hpp"
#include "arnet/io.hpp"
#include "arnet/spectral.hpp"
#include "arnet/synthetic.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace arnet;
using nlohmann::json;
using testsupport::random_symmetric;
using testsupport::random_vector;
using testsupport::TempDir;
using testsupport::write_text;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the installed binary; returns its exit code with stdout and stderr
// captured into files inside `dir`.
int run_cli(const TempDir& dir, const std::string& args) {
  const std::string cmd = std::string(ARNET_CLI_PATH) + " " + args + " > " +
                          dir.file("stdout.txt") + " 2> " +
                          dir.file("stderr.txt");
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

}  // namespace

TEST_CASE("k grid parsing") {
  CHECK(cli::parse_k_grid("3:6", 1, 1) == std::vector<Index>{3, 4, 5, 6});
  CHECK(cli::parse_k_grid("1,5,2", 1, 1) == std::vector<Index>{1, 5, 2});
  CHECK(cli::parse_k_grid("", 2, 4) == std::vector<Index>{2, 3, 4});
  CHECK_THROWS_AS(cli::parse_k_grid("6:3", 1, 1), MalformedFile);
  CHECK_THROWS_AS(cli::parse_k_grid("a,b", 1, 1), MalformedFile);
  CHECK_THROWS_AS(cli::parse_k_grid("0", 1, 1), MalformedFile);
  CHECK_THROWS_AS(cli::parse_k_grid(",", 1, 1), MalformedFile);
}

TEST_CASE("network resolution: one source only, generators parse") {
  cli::InputSpec both;
  both.path = "x";
  both.gen = "bipartite:4";
  CHECK_THROWS_AS(cli::resolve_network(both), MalformedFile);
  cli::InputSpec neither;
  CHECK_THROWS_AS(cli::resolve_network(neither), MalformedFile);

  cli::InputSpec gen;
  gen.gen = "bipartite:4";
  CHECK(cli::resolve_network(gen).size() == 8);
  gen.gen = "sandwich:3";
  CHECK(cli::resolve_network(gen).size() == 6);
  gen.gen = "bipartite";
  CHECK_THROWS_AS(cli::resolve_network(gen), MalformedFile);
  gen.gen = "bipartite:x";
  CHECK_THROWS_AS(cli::resolve_network(gen), MalformedFile);
  gen.gen = "bipartite:-2";
  CHECK_THROWS_AS(cli::resolve_network(gen), MalformedFile);
  gen.gen = "ring:5";
  CHECK_THROWS_AS(cli::resolve_network(gen), MalformedFile);
}

TEST_CASE("decompose command: signed split of the two-block network") {
  TempDir dir("cmd_decomp");
  cli::DecomposeOptions options;
  options.input.gen = "bipartite:4";
  options.rank = 2;
  options.out_dir = dir.path();
  cli::cmd_decompose(options);

  json report = read_json_file(dir.file("report.json"));
  CHECK(report["command"] == "decompose");
  CHECK(report["n"] == 8);
  CHECK(report["strategy"] == "nuclear-min");
  CHECK(report["k"] == 2);
  CHECK(report["p"] == 1);
  CHECK(report["q"] == 1);
  CHECK(report["converged"] == true);
  CHECK(report["normalized_error"].get<double>() < 1e-8);
  CHECK(report["network_heterophily"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report["nuclear_norm"].get<double>() ==
        doctest::Approx(8.0).epsilon(1e-9));
  CHECK(report["params"]["tau"].get<double>() == doctest::Approx(40.0));

  EmbeddingFile embeddings = read_embeddings_csv(dir.file("embeddings.csv"));
  REQUIRE(embeddings.ar.attract.cols() == 1);
  REQUIRE(embeddings.ar.repel.cols() == 1);
  const double c = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < 8; ++i) {
    CHECK(std::abs(embeddings.ar.attract(i, 0)) == doctest::Approx(c));
    CHECK(std::abs(embeddings.ar.repel(i, 0)) == doctest::Approx(c));
  }
}

TEST_CASE("decompose command: PSD strategy cannot fit the cut at rank two") {
  TempDir dir("cmd_decomp_psd");
  cli::DecomposeOptions options;
  options.input.gen = "bipartite:4";
  options.strategy = "psd-nuclear-min";
  options.rank = 2;
  options.out_dir = dir.path();
  cli::cmd_decompose(options);
  json report = read_json_file(dir.file("report.json"));
  CHECK(report["normalized_error"].get<double>() > 0.05);
  CHECK(report["q"] == 0);

  // Without a rank cap the PSD completion keeps 2*4 - 1 = 7 dimensions.
  cli::DecomposeOptions full = options;
  full.rank.reset();
  cli::cmd_decompose(full);
  json full_report = read_json_file(dir.file("report.json"));
  CHECK(full_report["k"] == 7);
  CHECK(full_report["normalized_error"].get<double>() < 1e-8);
}

TEST_CASE("decompose command: log1p preprocessing") {
  TempDir dir("cmd_log1p");
  const double w = std::exp(1.0) - 1.0;  // log1p(w) == 1
  char buf[128];
  std::snprintf(buf, sizeof buf, "0,%.17g\n%.17g,0\n", w, w);
  write_text(dir.file("net.csv"), buf);

  cli::DecomposeOptions options;
  options.input.path = dir.file("net.csv");
  options.input.format = NetworkFormat::DenseCsv;
  options.log1p = true;
  options.out_dir = dir.path();
  cli::cmd_decompose(options);
  json report = read_json_file(dir.file("report.json"));
  // The transformed weight is exactly one, so the spectrum is +-1.
  CHECK(report["nuclear_norm"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(report["k"] == 2);
  CHECK(report["params"]["log1p"] == true);
}

TEST_CASE("metrics command on two-block embeddings") {
  TempDir dir("cmd_metrics");
  cli::DecomposeOptions decomp;
  decomp.input.gen = "bipartite:4";
  decomp.rank = 2;
  decomp.out_dir = dir.path();
  cli::cmd_decompose(decomp);

  cli::MetricsOptions options;
  options.embeddings = dir.file("embeddings.csv");
  options.queries = {"4"};
  options.top_m = 3;
  options.out_dir = dir.path();
  cli::cmd_metrics(options);

  json report = read_json_file(dir.file("metrics.json"));
  CHECK(report["command"] == "metrics");
  CHECK(report["k"] == 2);
  CHECK(report["network_heterophily"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));
  for (const auto& score : report["node_scores"]) {
    CHECK(score.get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  }
  REQUIRE(report["queries"].size() == 1);
  CHECK(report["queries"][0] == 4);
  const auto& subs = report["top_substitutes"][0];
  REQUIRE(subs.size() == 3);
  // Node 4 shares its side with 5, 6, 7: all at cosine one, index order.
  CHECK(subs[0][0] == 5);
  CHECK(subs[1][0] == 6);
  CHECK(subs[2][0] == 7);
  CHECK(subs[0][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  SUBCASE("unknown node labels are rejected") {
    cli::MetricsOptions bad = options;
    bad.queries = {"zebra"};
    CHECK_THROWS_AS(cli::cmd_metrics(bad), UnknownNode);
    bad.queries = {"99"};
    CHECK_THROWS_AS(cli::cmd_metrics(bad), UnknownNode);
  }
  SUBCASE("unknown metric name") {
    cli::MetricsOptions bad = options;
    bad.metric = "hamming";
    CHECK_THROWS_AS(cli::cmd_metrics(bad), MalformedFile);
  }
}

TEST_CASE("metrics command without repel dimensions reports the error") {
  TempDir dir("cmd_metrics_psd");
  cli::DecomposeOptions decomp;
  decomp.input.gen = "bipartite:2";
  decomp.strategy = "psd-nuclear-min";
  decomp.out_dir = dir.path();
  cli::cmd_decompose(decomp);

  cli::MetricsOptions options;
  options.embeddings = dir.file("embeddings.csv");
  options.queries = {"0"};
  options.out_dir = dir.path();
  CHECK_THROWS_AS(cli::cmd_metrics(options), EmptyRepelSpace);
}

TEST_CASE("bcv command recovers a planted rank on a saved network") {
  const Index n = 40;
  Vector x = random_vector(n, 601);
  Vector y = random_vector(n, 602);
  Vector z = random_vector(n, 603);
  Matrix m = x * x.transpose() + y * y.transpose() - z * z.transpose() +
             random_symmetric(n, 604, 0.01);
  SymmetricNetwork net(m, true);

  TempDir dir("cmd_bcv");
  save_network(net, dir.file("net.csv"), NetworkFormat::DenseCsv);

  cli::BcvCliOptions options;
  options.input.path = dir.file("net.csv");
  options.input.format = NetworkFormat::DenseCsv;
  options.input.seed = 5;
  options.folds = 8;
  options.k_grid = "1:6";
  options.out_dir = dir.path();
  BcvResult result = cli::cmd_bcv(options);
  CHECK(result.k_best == 3);
  REQUIRE(result.table.size() == 6);

  std::ifstream in(dir.file("bcv.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,mean_loss,skipped_folds");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("benchmark command writes per-strategy curves") {
  TempDir dir("cmd_bench");
  cli::BenchmarkOptions options;
  options.input.gen = "bipartite:8";
  options.k_grid = "1:16";
  options.out_dir = dir.path();
  cli::cmd_benchmark(options);

  std::ifstream in(dir.file("curves.csv"));
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "strategy,k,normalized_error");
  std::map<std::pair<std::string, Index>, double> curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string name, k_text, err_text;
    std::getline(row, name, ',');
    std::getline(row, k_text, ',');
    std::getline(row, err_text, ',');
    curve[{name, std::stol(k_text)}] = std::stod(err_text);
  }
  REQUIRE(curve.size() == 4 * 16);
  // The signed pipeline nails the cut with two factors.
  CHECK(curve[{"nuclear-min", 2}] < 1e-8);
  CHECK(curve[{"zero-diag", 2}] < 1e-8);
  // The PSD completion needs 2*8 - 1 factors: still poor one short of that.
  CHECK(curve[{"psd-nuclear-min", 14}] > 1e-6);
  CHECK(curve[{"psd-nuclear-min", 15}] < 1e-6);
}

TEST_CASE("gen command round-trips generated networks through files") {
  TempDir dir("cmd_gen");

  cli::GenOptions bip;
  bip.gen = "bipartite:3";
  bip.out_path = dir.file("bip.txt");
  bip.format = NetworkFormat::EdgeList;
  cli::cmd_gen(bip);
  SymmetricNetwork loaded = load_network(dir.file("bip.txt"),
                                         NetworkFormat::EdgeList);
  CHECK((loaded.weights() - generate_bipartite(3).weights()).norm() == 0.0);

  cli::GenOptions sand;
  sand.gen = "sandwich:2";
  sand.out_path = dir.file("sand.csv");
  sand.format = NetworkFormat::DenseCsv;
  cli::cmd_gen(sand);
  SymmetricNetwork cooc = load_network(dir.file("sand.csv"),
                                       NetworkFormat::DenseCsv);
  CHECK((cooc.weights() - generate_sandwich(2).cooccurrence).norm() == 0.0);

  cli::GenOptions missing;
  missing.gen = "bipartite:3";
  CHECK_THROWS_AS(cli::cmd_gen(missing), MalformedFile);
}

TEST_CASE("block model files drive the generator") {
  TempDir dir("cmd_sbm");
  write_text(dir.file("model.json"),
             R"({"connection": [[0.0, 1.0], [1.0, 0.0]], "sizes": [2, 2]})");
  cli::InputSpec spec;
  spec.gen = "sbm:" + dir.file("model.json");
  SymmetricNetwork net = cli::resolve_network(spec);
  CHECK((net.weights() - generate_bipartite(2).weights()).norm() == 0.0);

  // The "B" alias and sampled mode.
  write_text(dir.file("sampled.json"),
             R"({"B": [[0.5, 0.5], [0.5, 0.5]], "sizes": [8, 8],)"
             R"( "mode": "sampled"})");
  spec.gen = "sbm:" + dir.file("sampled.json");
  spec.seed = 3;
  SymmetricNetwork draw = cli::resolve_network(spec);
  REQUIRE(draw.size() == 16);
  for (Index i = 0; i < 16; ++i) {
    for (Index j = 0; j < 16; ++j) {
      if (i == j) continue;
      const double w = draw.weights()(i, j);
      CHECK((w == 0.0 || w == 1.0));
    }
  }
  SymmetricNetwork same_seed = cli::resolve_network(spec);
  CHECK((draw.weights() - same_seed.weights()).norm() == 0.0);

  write_text(dir.file("bad.json"), R"({"sizes": [2, 2]})");
  spec.gen = "sbm:" + dir.file("bad.json");
  CHECK_THROWS_AS(cli::resolve_network(spec), MalformedFile);
  write_text(dir.file("badmode.json"),
             R"({"B": [[0.5]], "sizes": [4], "mode": "diagonal"})");
  spec.gen = "sbm:" + dir.file("badmode.json");
  CHECK_THROWS_AS(cli::resolve_network(spec), MalformedFile);
}

TEST_CASE("binary: error reporting and exit codes") {
  TempDir dir("proc_err");
  const int code = run_cli(dir, "decompose --input /nonexistent/net.txt"
                                " --out-dir " + dir.path());
  CHECK(code == 2);
  const std::string err = slurp(dir.file("stderr.txt"));
  CHECK(err.find("MalformedFile") != std::string::npos);

  const int bad_strategy =
      run_cli(dir, "decompose --gen bipartite:4 --strategy weird --out-dir " +
                       dir.path());
  CHECK(bad_strategy == 2);
  CHECK(slurp(dir.file("stderr.txt")).find("UnknownStrategy") !=
        std::string::npos);

  CHECK(run_cli(dir, "") != 0);  // a subcommand is required
}

TEST_CASE("binary: bcv prints the selected rank") {
  TempDir dir("proc_bcv");
  const int code =
      run_cli(dir, "bcv --gen bipartite:8 --folds 4 --k-grid 1:3 --seed 2"
                   " --out-dir " + dir.path());
  CHECK(code == 0);
  std::istringstream out(slurp(dir.file("stdout.txt")));
  std::string first;
  std::getline(out, first);
  CHECK(first == "2");
}

TEST_CASE("binary: benchmark prints fidelity thresholds") {
  TempDir dir("proc_bench");
  const int code =
      run_cli(dir, "benchmark --gen bipartite:4 --strategies nuclear-min"
                   " --k-grid 1:8 --out-dir " + dir.path());
  CHECK(code == 0);
  const std::string out = slurp(dir.file("stdout.txt"));
  CHECK(out.find("strategy,target,min_k") != std::string::npos);
  // Rank one explains 56.25% of the off-diagonal mass; every listed target
  // needs the second factor.
  CHECK(out.find("nuclear-min,0.8,2") != std::string::npos);
  CHECK(out.find("nuclear-min,0.95,2") != std::string::npos);
}

TEST_CASE("binary: decompose writes artifacts end to end") {
  TempDir dir("proc_decomp");
  const int code =
      run_cli(dir, "decompose --gen bipartite:4 --rank 2 --out-dir " +
                       dir.path());
  CHECK(code == 0);
  json report = read_json_file(dir.file("report.json"));
  CHECK(report["normalized_error"].get<double>() < 1e-8);
  CHECK(read_embeddings_csv(dir.file("embeddings.csv")).ar.node_count() == 8);
}
