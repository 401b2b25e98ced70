#include "arnet/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace arnet {

namespace {

constexpr double kZeroEigenRel = 1e-8;    // |d| below this * max|d| is zero
constexpr double kSymmetryRel = 1e-10;
constexpr double kSignEps = 1e-12;
constexpr double kTieRel = 1e-12;  // |d| within this (relative) are tied

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Spectrum eigendecompose(const Matrix& completed) {
  const Index n = completed.rows();
  if (completed.cols() != n) {
    throw LengthMismatch("matrix is " + std::to_string(n) + "x" +
                         std::to_string(completed.cols()));
  }
  const double scale = std::max(1.0, completed.cwiseAbs().maxCoeff());
  const double skew = (completed - completed.transpose()).cwiseAbs().maxCoeff();
  if (skew > kSymmetryRel * scale) {
    throw AsymmetricInput("matrix is asymmetric by " + std::to_string(skew));
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(completed));
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("eigendecomposition did not converge");
  }
  const Vector& d = eig.eigenvalues();

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double va = std::abs(d[a]), vb = std::abs(d[b]);
    if (va != vb) return va > vb;
    if ((d[a] > 0.0) != (d[b] > 0.0)) return d[a] > 0.0;
    return a < b;
  });
  // A plus/minus eigenvalue pair (two-block graphs, say) comes back from the
  // solver with magnitudes differing in the last bits, so an exact comparison
  // would order such pairs arbitrarily. Re-resolve runs of nearly equal
  // magnitude deterministically: positive eigenvalues first, then solver
  // order. Done as a post-pass because a tolerant comparator would not be a
  // strict weak ordering.
  for (Index lo = 0; lo < n;) {
    Index hi = lo + 1;
    while (hi < n) {
      const double va = std::abs(d[order[hi - 1]]);
      const double vb = std::abs(d[order[hi]]);
      if (va - vb > kTieRel * std::max(1.0, va)) break;
      ++hi;
    }
    if (hi - lo > 1) {
      std::stable_sort(order.begin() + lo, order.begin() + hi,
                       [&](Index a, Index b) {
                         const bool pa = d[a] > 0.0, pb = d[b] > 0.0;
                         if (pa != pb) return pa;
                         return a < b;
                       });
    }
    lo = hi;
  }

  Spectrum spectrum;
  spectrum.eigenvalues.resize(n);
  spectrum.eigenvectors.resize(n, n);
  for (Index out = 0; out < n; ++out) {
    const Index src = order[out];
    spectrum.eigenvalues[out] = d[src];
    Vector v = eig.eigenvectors().col(src);
    for (Index i = 0; i < n; ++i) {
      if (std::abs(v[i]) > kSignEps) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }
    spectrum.eigenvectors.col(out) = v;
  }
  return spectrum;
}

ARDecomposition split_ar(const Spectrum& spectrum, std::optional<Index> rank) {
  const Index n = spectrum.size();
  if (spectrum.eigenvectors.rows() != n || spectrum.eigenvectors.cols() != n) {
    throw LengthMismatch("spectrum has " + std::to_string(n) +
                         " eigenvalues but a " +
                         std::to_string(spectrum.eigenvectors.rows()) + "x" +
                         std::to_string(spectrum.eigenvectors.cols()) +
                         " eigenvector matrix");
  }
  Index k = rank.value_or(n);
  if (k < 1 || k > n) {
    throw RankOutOfRange("rank " + std::to_string(k) + " not in [1, " +
                         std::to_string(n) + "]");
  }
  const double zero_tol =
      n == 0 ? 0.0 : kZeroEigenRel * spectrum.eigenvalues.cwiseAbs().maxCoeff();

  std::vector<Index> pos, neg;
  for (Index j = 0; j < k; ++j) {
    const double dj = spectrum.eigenvalues[j];
    if (std::abs(dj) <= zero_tol) continue;
    (dj > 0.0 ? pos : neg).push_back(j);
  }

  ARDecomposition ar;
  ar.attract.resize(n, static_cast<Index>(pos.size()));
  ar.repel.resize(n, static_cast<Index>(neg.size()));
  ar.diagonal = Vector::Zero(n);
  for (size_t c = 0; c < pos.size(); ++c) {
    const Index j = pos[c];
    ar.attract.col(static_cast<Index>(c)) =
        std::sqrt(spectrum.eigenvalues[j]) * spectrum.eigenvectors.col(j);
  }
  for (size_t c = 0; c < neg.size(); ++c) {
    const Index j = neg[c];
    ar.repel.col(static_cast<Index>(c)) =
        std::sqrt(-spectrum.eigenvalues[j]) * spectrum.eigenvectors.col(j);
  }
  ar.diagonal = ar.attract.rowwise().squaredNorm() -
                ar.repel.rowwise().squaredNorm();
  return ar;
}

Matrix reconstruct(const ARDecomposition& ar) {
  const Index n = ar.node_count();
  Matrix m = Matrix::Zero(n, n);
  if (ar.attract.cols() > 0) m.noalias() += ar.attract * ar.attract.transpose();
  if (ar.repel.cols() > 0) m.noalias() -= ar.repel * ar.repel.transpose();
  return m;
}

double reconstruction_error(const SymmetricNetwork& net,
                            const ARDecomposition& ar, bool normalized) {
  const Index n = net.size();
  if (ar.node_count() != n) {
    throw LengthMismatch("decomposition covers " +
                         std::to_string(ar.node_count()) + " nodes, network " +
                         std::to_string(n));
  }
  Matrix diff = net.weights() - reconstruct(ar);
  diff.diagonal().setZero();
  double err = diff.squaredNorm();
  if (normalized) {
    const double denom = net.off_diagonal().squaredNorm();
    if (denom == 0.0) {
      throw ZeroNetwork("cannot normalize: all off-diagonal weights are zero");
    }
    err /= denom;
  }
  return err;
}

std::vector<RankErrorPoint> rank_error_curve(const SymmetricNetwork& net,
                                             const Matrix& completed,
                                             const std::vector<Index>& k_range) {
  const Index n = net.size();
  if (completed.rows() != n || completed.cols() != n) {
    throw LengthMismatch("completed matrix does not match the network size");
  }
  for (Index k : k_range) {
    if (k < 1 || k > n) {
      throw RankOutOfRange("rank " + std::to_string(k) + " not in [1, " +
                           std::to_string(n) + "]");
    }
  }
  const double denom = net.off_diagonal().squaredNorm();
  if (denom == 0.0) {
    throw ZeroNetwork("cannot normalize: all off-diagonal weights are zero");
  }

  const Spectrum spectrum = eigendecompose(completed);
  const double zero_tol =
      kZeroEigenRel * spectrum.eigenvalues.cwiseAbs().maxCoeff();

  std::vector<Index> sorted_ks = k_range;
  std::sort(sorted_ks.begin(), sorted_ks.end());
  sorted_ks.erase(std::unique(sorted_ks.begin(), sorted_ks.end()),
                  sorted_ks.end());

  // One pass over the eigenpairs, accumulating the rank-k reconstruction and
  // evaluating the error at each requested k.
  std::map<Index, double> error_at;
  Matrix recon = Matrix::Zero(n, n);
  Matrix diff;
  Index next = 0;
  for (Index k = 1; k <= n && next < static_cast<Index>(sorted_ks.size());
       ++k) {
    const double dj = spectrum.eigenvalues[k - 1];
    if (std::abs(dj) > zero_tol) {
      recon.noalias() +=
          dj * spectrum.eigenvectors.col(k - 1) *
          spectrum.eigenvectors.col(k - 1).transpose();
    }
    if (sorted_ks[next] == k) {
      diff = net.weights() - recon;
      diff.diagonal().setZero();
      error_at[k] = diff.squaredNorm() / denom;
      ++next;
    }
  }

  std::vector<RankErrorPoint> curve;
  curve.reserve(k_range.size());
  for (Index k : k_range) curve.push_back({k, error_at.at(k)});
  return curve;
}

std::vector<RankErrorPoint> rank_error_curve(const SymmetricNetwork& net,
                                             CompletionStrategy strategy,
                                             const std::vector<Index>& k_range,
                                             const SvtOptions& options) {
  return rank_error_curve(net, complete(net, strategy, options).completed,
                          k_range);
}

void write_embeddings_csv(const std::string& path, const ARDecomposition& ar,
                          const std::vector<std::string>& labels) {
  const Index n = ar.node_count();
  if (!labels.empty() && static_cast<Index>(labels.size()) != n) {
    throw LengthMismatch("expected " + std::to_string(n) + " labels, got " +
                         std::to_string(labels.size()));
  }
  std::ofstream out(path);
  if (!out) {
    throw MalformedFile("cannot write " + path);
  }
  out << "node";
  for (Index j = 0; j < ar.attract.cols(); ++j) out << ",a_" << (j + 1);
  for (Index j = 0; j < ar.repel.cols(); ++j) out << ",r_" << (j + 1);
  out << "\n";
  for (Index i = 0; i < n; ++i) {
    if (labels.empty()) {
      out << i;
    } else {
      out << labels[i];
    }
    for (Index j = 0; j < ar.attract.cols(); ++j) {
      out << "," << fmt_double(ar.attract(i, j));
    }
    for (Index j = 0; j < ar.repel.cols(); ++j) {
      out << "," << fmt_double(ar.repel(i, j));
    }
    out << "\n";
  }
  if (!out.good()) {
    throw MalformedFile("write failed for " + path);
  }
}

EmbeddingFile read_embeddings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw MalformedFile("cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw MalformedFile(path + ": empty file");
  }
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string f;
    while (std::getline(h, f, ',')) header.push_back(f);
  }
  if (header.empty() || header[0] != "node") {
    throw MalformedFile(path + ": expected a \"node,a_*,r_*\" header");
  }
  Index p = 0, q = 0;
  for (size_t c = 1; c < header.size(); ++c) {
    if (header[c].rfind("a_", 0) == 0 && q == 0) {
      ++p;
    } else if (header[c].rfind("r_", 0) == 0) {
      ++q;
    } else {
      throw MalformedFile(path + ": unexpected column \"" + header[c] + "\"");
    }
  }

  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream r(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(r, field, ',')) fields.push_back(field);
    if (static_cast<Index>(fields.size()) != 1 + p + q) {
      throw MalformedFile(path + ":" + std::to_string(lineno) +
                          ": expected " + std::to_string(1 + p + q) +
                          " fields");
    }
    labels.push_back(fields[0]);
    std::vector<double> vals;
    vals.reserve(p + q);
    for (Index c = 1; c <= p + q; ++c) {
      char* end = nullptr;
      const std::string& f = fields[static_cast<size_t>(c)];
      double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0') {
        throw MalformedFile(path + ":" + std::to_string(lineno) +
                            ": not a number: \"" + f + "\"");
      }
      vals.push_back(v);
    }
    rows.push_back(std::move(vals));
  }
  const Index n = static_cast<Index>(rows.size());
  if (n == 0) {
    throw MalformedFile(path + ": no embedding rows");
  }

  EmbeddingFile file;
  file.ar.attract.resize(n, p);
  file.ar.repel.resize(n, q);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) file.ar.attract(i, j) = rows[i][j];
    for (Index j = 0; j < q; ++j) file.ar.repel(i, j) = rows[i][p + j];
  }
  file.ar.diagonal = file.ar.attract.rowwise().squaredNorm() -
                     file.ar.repel.rowwise().squaredNorm();
  file.labels = std::move(labels);
  return file;
}

void write_curve_csv(const std::string& path,
                     const std::vector<RankErrorPoint>& curve) {
  std::ofstream out(path);
  if (!out) {
    throw MalformedFile("cannot write " + path);
  }
  out << "k,error\n";
  for (const auto& point : curve) {
    out << point.k << "," << fmt_double(point.error) << "\n";
  }
  if (!out.good()) {
    throw MalformedFile("write failed for " + path);
  }
}

}  // namespace arnet
