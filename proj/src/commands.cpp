#include "arnet/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "arnet/metrics.hpp"
#include "arnet/spectral.hpp"
#include "arnet/synthetic.hpp"
#include "json.hpp"

namespace arnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

BlockModel load_block_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw MalformedFile("cannot open " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MalformedFile(path + ": " + e.what());
  }
  const char* key = j.contains("connection") ? "connection"
                    : j.contains("B")        ? "B"
                                             : nullptr;
  if (!key || !j.contains("sizes")) {
    throw MalformedFile(path +
                        ": expected keys \"connection\" (or \"B\") and "
                        "\"sizes\"");
  }
  const auto& rows = j[key];
  if (!rows.is_array() || rows.empty()) {
    throw MalformedFile(path + ": connection must be a nonempty 2d array");
  }
  const Index d = static_cast<Index>(rows.size());
  BlockModel model;
  model.connection.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    const auto& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d) {
      throw MalformedFile(path + ": connection row " + std::to_string(i) +
                          " is not length " + std::to_string(d));
    }
    for (Index c = 0; c < d; ++c) {
      if (!row[static_cast<size_t>(c)].is_number()) {
        throw MalformedFile(path + ": connection entries must be numbers");
      }
      model.connection(i, c) = row[static_cast<size_t>(c)].get<double>();
    }
  }
  for (const auto& s : j["sizes"]) {
    if (!s.is_number_integer()) {
      throw MalformedFile(path + ": sizes must be integers");
    }
    model.sizes.push_back(s.get<Index>());
  }
  return model;
}

SymmetricNetwork generated_network(const std::string& gen, std::uint64_t seed) {
  const auto colon = gen.find(':');
  if (colon == std::string::npos || colon + 1 == gen.size()) {
    throw MalformedFile("generator spec \"" + gen +
                        "\" is not kind:arg (bipartite:N, sandwich:M, or "
                        "sbm:model.json)");
  }
  const std::string kind = gen.substr(0, colon);
  const std::string arg = gen.substr(colon + 1);
  if (kind == "bipartite" || kind == "sandwich") {
    char* end = nullptr;
    const long value = std::strtol(arg.c_str(), &end, 10);
    if (end == arg.c_str() || *end != '\0' || value < 1) {
      throw MalformedFile("generator size \"" + arg +
                          "\" is not a positive integer");
    }
    if (kind == "bipartite") {
      return generate_bipartite(static_cast<Index>(value));
    }
    return SymmetricNetwork(
        generate_sandwich(static_cast<Index>(value)).cooccurrence);
  }
  if (kind == "sbm") {
    BlockModel model = load_block_model(arg);
    std::ifstream in(arg);
    json j;
    in >> j;
    SbmMode mode = SbmMode::Expected;
    if (j.contains("mode")) {
      const std::string name = j["mode"].get<std::string>();
      if (name == "sampled") {
        mode = SbmMode::Sampled;
      } else if (name != "expected") {
        throw MalformedFile(arg + ": mode must be \"expected\" or \"sampled\"");
      }
    }
    return expand_sbm(model, mode, seed);
  }
  throw MalformedFile("unknown generator \"" + kind + "\"");
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw MalformedFile("cannot create output directory " + out_dir + ": " +
                        ec.message());
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw MalformedFile("cannot write " + path);
  }
  out << j.dump(2) << "\n";
  if (!out.good()) {
    throw MalformedFile("write failed for " + path);
  }
}

}  // namespace

SymmetricNetwork resolve_network(const InputSpec& input) {
  const bool have_path = !input.path.empty();
  const bool have_gen = !input.gen.empty();
  if (have_path == have_gen) {
    throw MalformedFile("specify exactly one of --input and --gen");
  }
  if (have_gen) {
    return generated_network(input.gen, input.seed);
  }
  return load_network(input.path, input.format);
}

std::vector<Index> parse_k_grid(const std::string& text, Index fallback_lo,
                                Index fallback_hi) {
  std::vector<Index> grid;
  if (text.empty()) {
    for (Index k = fallback_lo; k <= fallback_hi; ++k) grid.push_back(k);
    return grid;
  }
  auto parse_int = [&](const std::string& tok) {
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || v < 1) {
      throw MalformedFile("k grid entry \"" + tok +
                          "\" is not a positive integer");
    }
    return static_cast<Index>(v);
  };
  if (text.find(':') != std::string::npos) {
    const auto colon = text.find(':');
    const Index lo = parse_int(text.substr(0, colon));
    const Index hi = parse_int(text.substr(colon + 1));
    if (hi < lo) {
      throw MalformedFile("k grid range \"" + text + "\" is reversed");
    }
    for (Index k = lo; k <= hi; ++k) grid.push_back(k);
    return grid;
  }
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) grid.push_back(parse_int(tok));
  }
  if (grid.empty()) {
    throw MalformedFile("empty k grid \"" + text + "\"");
  }
  return grid;
}

void cmd_decompose(const DecomposeOptions& options) {
  SymmetricNetwork net = resolve_network(options.input);
  if (options.log1p) {
    net = log1p_transform(net);
  }
  const CompletionStrategy strategy = parse_strategy(options.strategy);
  const SvtOptions svt = options.svt.resolved(net.size());
  const CompletionResult completion = complete(net, strategy, svt);
  const Spectrum spectrum = eigendecompose(completion.completed);
  const ARDecomposition ar = split_ar(spectrum, options.rank);
  const double error = reconstruction_error(net, ar, true);
  const double heterophily = network_heterophily(ar);

  ensure_out_dir(options.out_dir);
  write_embeddings_csv(join_path(options.out_dir, "embeddings.csv"), ar,
                       net.node_labels());

  json report = {
      {"schema", 1},
      {"command", "decompose"},
      {"n", net.size()},
      {"strategy", strategy_name(strategy)},
      {"k", ar.source_rank()},
      {"p", ar.attract.cols()},
      {"q", ar.repel.cols()},
      {"nuclear_norm", completion.nuclear_norm},
      {"iterations", completion.iterations},
      {"residual", completion.residual},
      {"converged", completion.converged},
      {"normalized_error", error},
      {"network_heterophily", heterophily},
      {"params",
       {{"input", options.input.path},
        {"format", format_name(options.input.format)},
        {"gen", options.input.gen},
        {"strategy", options.strategy},
        {"rank", options.rank ? json(*options.rank) : json(nullptr)},
        {"tau", svt.tau},
        {"step", svt.step},
        {"tol", svt.tol},
        {"max_iter", svt.max_iter},
        {"seed", options.input.seed},
        {"log1p", options.log1p},
        {"out_dir", options.out_dir}}},
  };
  write_json(join_path(options.out_dir, "report.json"), report);
}

void cmd_metrics(const MetricsOptions& options) {
  const EmbeddingFile file = read_embeddings_csv(options.embeddings);
  const ARDecomposition& ar = file.ar;
  const Index n = ar.node_count();

  NeighborMetric metric;
  if (options.metric == "cosine") {
    metric = NeighborMetric::Cosine;
  } else if (options.metric == "dot") {
    metric = NeighborMetric::Dot;
  } else {
    throw MalformedFile("unknown metric \"" + options.metric +
                        "\" (expected cosine or dot)");
  }

  std::vector<Index> queries;
  for (const std::string& q : options.queries) {
    char* end = nullptr;
    const long long v = std::strtoll(q.c_str(), &end, 10);
    if (end != q.c_str() && *end == '\0') {
      if (v < 0 || v >= n) {
        throw UnknownNode("node " + q + " not in [0, " + std::to_string(n) +
                          ")");
      }
      queries.push_back(static_cast<Index>(v));
      continue;
    }
    const auto it = std::find(file.labels.begin(), file.labels.end(), q);
    if (it == file.labels.end()) {
      throw UnknownNode("no node labeled \"" + q + "\"");
    }
    queries.push_back(
        static_cast<Index>(std::distance(file.labels.begin(), it)));
  }

  const Vector node_scores = node_heterophily(ar);
  json substitutes = json::array();
  for (Index q : queries) {
    const auto neighbors = repel_neighbors(ar, q, options.top_m, metric);
    json list = json::array();
    for (const auto& [node, score] : neighbors) {
      list.push_back(json::array({node, score}));
    }
    substitutes.push_back(std::move(list));
  }

  json report = {
      {"schema", 1},
      {"command", "metrics"},
      {"k", ar.source_rank()},
      {"network_heterophily", network_heterophily(ar)},
      {"node_scores", std::vector<double>(node_scores.begin(),
                                          node_scores.end())},
      {"queries", queries},
      {"top_substitutes", std::move(substitutes)},
      {"params",
       {{"embeddings", options.embeddings},
        {"top_m", options.top_m},
        {"metric", options.metric},
        {"out_dir", options.out_dir}}},
  };
  ensure_out_dir(options.out_dir);
  write_json(join_path(options.out_dir, "metrics.json"), report);
}

BcvResult cmd_bcv(const BcvCliOptions& options) {
  const SymmetricNetwork net = resolve_network(options.input);
  BcvOptions bcv;
  bcv.folds = options.folds;
  bcv.seed = options.input.seed;
  if (!options.k_grid.empty()) {
    bcv.k_grid = parse_k_grid(options.k_grid, 1, 1);
  }
  const BcvResult result = bcv_select_rank(net, bcv);
  ensure_out_dir(options.out_dir);
  write_bcv_csv(join_path(options.out_dir, "bcv.csv"), result);
  std::cout << result.k_best << "\n";
  return result;
}

void cmd_benchmark(const BenchmarkOptions& options) {
  const SymmetricNetwork net = resolve_network(options.input);
  std::vector<std::string> strategies = options.strategies;
  if (strategies.empty()) {
    strategies = {"nuclear-min", "psd-nuclear-min", "zero-diag", "degree-diag"};
  }
  const std::vector<Index> ks = parse_k_grid(options.k_grid, 1, net.size());

  ensure_out_dir(options.out_dir);
  std::ofstream out(join_path(options.out_dir, "curves.csv"));
  if (!out) {
    throw MalformedFile("cannot write curves.csv");
  }
  out << "strategy,k,normalized_error\n";

  const double targets[] = {0.8, 0.9, 0.95};
  std::cout << "strategy,target,min_k\n";
  char buf[40];
  for (const std::string& name : strategies) {
    const CompletionStrategy strategy = parse_strategy(name);
    const auto curve = rank_error_curve(net, strategy, ks, options.svt);
    for (const auto& point : curve) {
      std::snprintf(buf, sizeof buf, "%.17g", point.error);
      out << name << "," << point.k << "," << buf << "\n";
    }
    for (double target : targets) {
      Index min_k = -1;
      for (const auto& point : curve) {
        if (1.0 - point.error >= target) {
          min_k = point.k;
          break;
        }
      }
      std::cout << name << "," << target << ",";
      if (min_k < 0) {
        std::cout << "-";
      } else {
        std::cout << min_k;
      }
      std::cout << "\n";
    }
  }
  if (!out.good()) {
    throw MalformedFile("write failed for curves.csv");
  }
}

void cmd_gen(const GenOptions& options) {
  if (options.gen.empty() || options.out_path.empty()) {
    throw MalformedFile("gen needs a generator spec and an output path");
  }
  const SymmetricNetwork net = generated_network(options.gen, options.seed);
  save_network(net, options.out_path, options.format);
}

}  // namespace arnet::cli
