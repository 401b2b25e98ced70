#include "arnet/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arnet {

namespace {

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

bool parse_nonneg_int(const std::string& token, Index& out) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  errno = 0;
  out = static_cast<Index>(std::strtoll(token.c_str(), nullptr, 10));
  return errno == 0;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accumulates "i j w" records with conflict detection across both
// orientations of a pair.
class EntrySink {
 public:
  void add(Index i, Index j, double w, const std::string& where) {
    if (!std::isfinite(w)) {
      throw NonFiniteWeight("non-finite weight at " + where);
    }
    auto key = std::minmax(i, j);
    auto [it, inserted] = entries_.emplace(key, w);
    if (!inserted && it->second != w) {
      throw AsymmetricInput("conflicting weights for pair (" +
                            std::to_string(i) + "," + std::to_string(j) +
                            ") at " + where);
    }
    max_index_ = std::max(max_index_, key.second);
    if (i == j) saw_diagonal_ = true;
  }

  Index max_index() const { return max_index_; }
  bool saw_diagonal() const { return saw_diagonal_; }

  Matrix to_matrix(Index n) const {
    Matrix w = Matrix::Zero(n, n);
    for (const auto& [key, value] : entries_) {
      w(key.first, key.second) = value;
      w(key.second, key.first) = value;
    }
    return w;
  }

 private:
  std::map<std::pair<Index, Index>, double> entries_;
  Index max_index_ = -1;
  bool saw_diagonal_ = false;
};

struct EdgeRecord {
  std::string a, b;
  double w;
};

SymmetricNetwork load_edge_list(std::istream& in, const std::string& path) {
  std::string line;
  std::vector<EdgeRecord> records;
  Index declared_nodes = -1;
  int lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      // "# nodes: N" pins the node count (isolated trailing nodes would
      // otherwise be unrecoverable from the edges alone).
      auto comment = line.substr(hash + 1);
      auto tokens = split_ws(comment);
      if (tokens.size() == 2 && tokens[0] == "nodes:") {
        parse_nonneg_int(tokens[1], declared_nodes);
      }
      line.erase(hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    double w = 0.0;
    bool numeric_weight = tokens.size() == 3 && parse_double(tokens[2], w);
    if (!numeric_weight) {
      if (!saw_data) continue;  // header line
      throw MalformedFile(path + ":" + std::to_string(lineno) +
                          ": expected \"i j w\"");
    }
    saw_data = true;
    records.push_back({tokens[0], tokens[1], w});
  }
  if (records.empty()) {
    throw MalformedFile(path + ": no edges found");
  }

  bool integer_ids = true;
  for (const auto& r : records) {
    Index unused;
    if (!parse_nonneg_int(r.a, unused) || !parse_nonneg_int(r.b, unused)) {
      integer_ids = false;
      break;
    }
  }

  EntrySink sink;
  std::vector<std::string> labels;
  if (integer_ids) {
    for (const auto& r : records) {
      Index i, j;
      parse_nonneg_int(r.a, i);
      parse_nonneg_int(r.b, j);
      sink.add(i, j, r.w, path);
    }
  } else {
    std::unordered_map<std::string, Index> ids;
    auto intern = [&](const std::string& name) {
      auto [it, inserted] = ids.emplace(name, static_cast<Index>(labels.size()));
      if (inserted) labels.push_back(name);
      return it->second;
    };
    for (const auto& r : records) {
      // Sequence the two lookups so indices follow first appearance in the
      // file, not the compiler's argument evaluation order.
      const Index i = intern(r.a);
      const Index j = intern(r.b);
      sink.add(i, j, r.w, path);
    }
  }

  Index n = std::max(sink.max_index() + 1, declared_nodes);
  if (n < 2) {
    throw MalformedFile(path + ": a network needs at least 2 nodes");
  }
  // Nodes declared beyond the last edge get their decimal index as label so
  // every node stays addressable by name.
  for (Index i = static_cast<Index>(labels.size()); !labels.empty() && i < n;
       ++i) {
    labels.push_back(std::to_string(i));
  }
  return SymmetricNetwork(sink.to_matrix(n), sink.saw_diagonal(),
                          std::move(labels));
}

SymmetricNetwork load_coord(std::istream& in, const std::string& path) {
  std::string line;
  int lineno = 0;
  bool have_size = false;
  Index n = 0;
  long long nnz = 0, seen = 0;
  EntrySink sink;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (!have_size) {
      Index rows, cols, count;
      if (tokens.size() != 3 || !parse_nonneg_int(tokens[0], rows) ||
          !parse_nonneg_int(tokens[1], cols) ||
          !parse_nonneg_int(tokens[2], count)) {
        throw MalformedFile(where + ": expected size line \"rows cols nnz\"");
      }
      if (rows != cols) {
        throw AsymmetricInput(where + ": matrix is " + std::to_string(rows) +
                              "x" + std::to_string(cols));
      }
      if (rows < 2) {
        throw MalformedFile(where + ": a network needs at least 2 nodes");
      }
      n = rows;
      nnz = count;
      have_size = true;
      continue;
    }
    Index i, j;
    double v;
    if (tokens.size() != 3 || !parse_nonneg_int(tokens[0], i) ||
        !parse_nonneg_int(tokens[1], j) || !parse_double(tokens[2], v)) {
      throw MalformedFile(where + ": expected entry \"i j v\"");
    }
    if (i < 1 || i > n || j < 1 || j > n) {
      throw MalformedFile(where + ": index out of range");
    }
    sink.add(i - 1, j - 1, v, where);
    ++seen;
  }
  if (!have_size) {
    throw MalformedFile(path + ": missing size line");
  }
  if (seen != nnz) {
    throw MalformedFile(path + ": size line promises " + std::to_string(nnz) +
                        " entries, found " + std::to_string(seen));
  }
  return SymmetricNetwork(sink.to_matrix(n), sink.saw_diagonal());
}

SymmetricNetwork load_dense_csv(std::istream& in, const std::string& path) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        throw MalformedFile(path + ":" + std::to_string(lineno) +
                            ": not a number: \"" + f + "\"");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const Index n = static_cast<Index>(rows.size());
  if (n < 2) {
    throw MalformedFile(path + ": a network needs at least 2 nodes");
  }
  Matrix w(n, n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != n) {
      throw MalformedFile(path + ": row " + std::to_string(i + 1) + " has " +
                          std::to_string(rows[i].size()) + " of " +
                          std::to_string(n) + " columns");
    }
    for (Index j = 0; j < n; ++j) w(i, j) = rows[i][j];
  }
  return SymmetricNetwork(std::move(w));
}

}  // namespace

NetworkFormat parse_network_format(const std::string& name) {
  if (name == "edge-list") return NetworkFormat::EdgeList;
  if (name == "coord") return NetworkFormat::CoordMatrix;
  if (name == "dense-csv") return NetworkFormat::DenseCsv;
  throw MalformedFile("unknown format \"" + name +
                      "\" (expected edge-list, coord, or dense-csv)");
}

std::string format_name(NetworkFormat format) {
  switch (format) {
    case NetworkFormat::EdgeList: return "edge-list";
    case NetworkFormat::CoordMatrix: return "coord";
    case NetworkFormat::DenseCsv: return "dense-csv";
  }
  return "?";
}

SymmetricNetwork load_network(const std::string& path, NetworkFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw MalformedFile("cannot open " + path);
  }
  switch (format) {
    case NetworkFormat::EdgeList: return load_edge_list(in, path);
    case NetworkFormat::CoordMatrix: return load_coord(in, path);
    case NetworkFormat::DenseCsv: return load_dense_csv(in, path);
  }
  throw MalformedFile("unknown format for " + path);
}

void save_network(const SymmetricNetwork& net, const std::string& path,
                  NetworkFormat format) {
  std::ofstream out(path);
  if (!out) {
    throw MalformedFile("cannot write " + path);
  }
  const Matrix& w = net.weights();
  const Index n = net.size();
  switch (format) {
    case NetworkFormat::EdgeList: {
      out << "# nodes: " << n << "\n";
      for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
          if (w(i, j) != 0.0) {
            out << i << " " << j << " " << fmt_double(w(i, j)) << "\n";
          }
        }
      }
      break;
    }
    case NetworkFormat::CoordMatrix: {
      long long nnz = 0;
      for (Index j = 0; j < n; ++j) {
        for (Index i = j; i < n; ++i) {
          if (w(i, j) != 0.0) ++nnz;
        }
      }
      out << "%%MatrixMarket matrix coordinate real symmetric\n";
      out << n << " " << n << " " << nnz << "\n";
      for (Index j = 0; j < n; ++j) {
        for (Index i = j; i < n; ++i) {
          if (w(i, j) != 0.0) {
            out << (i + 1) << " " << (j + 1) << " " << fmt_double(w(i, j))
                << "\n";
          }
        }
      }
      break;
    }
    case NetworkFormat::DenseCsv: {
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          if (j) out << ",";
          out << fmt_double(w(i, j));
        }
        out << "\n";
      }
      break;
    }
  }
  if (!out.good()) {
    throw MalformedFile("write failed for " + path);
  }
}

SymmetricNetwork log1p_transform(const SymmetricNetwork& net) {
  const Index n = net.size();
  Matrix w = net.weights();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      if (w(i, j) < 0.0) {
        throw NegativeWeight("negative weight at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
      w(i, j) = std::log1p(w(i, j));
    }
  }
  return SymmetricNetwork(std::move(w), net.diagonal_observed(),
                          net.node_labels());
}

}  // namespace arnet
