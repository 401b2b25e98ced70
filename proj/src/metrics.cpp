#include "arnet/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace arnet {

namespace {

void check_node(const ARDecomposition& ar, Index i) {
  if (i < 0 || i >= ar.node_count()) {
    throw IndexOutOfRange("node " + std::to_string(i) + " not in [0, " +
                          std::to_string(ar.node_count()) + ")");
  }
}

}  // namespace

double network_heterophily(const Spectrum& spectrum, Index k) {
  const Index n = spectrum.size();
  if (k < 1 || k > n) {
    throw RankOutOfRange("k " + std::to_string(k) + " not in [1, " +
                         std::to_string(n) + "]");
  }
  double negative = 0.0, total = 0.0;
  for (Index j = 0; j < k; ++j) {
    const double dj = spectrum.eigenvalues[j];
    total += std::abs(dj);
    if (dj < 0.0) negative += -dj;
  }
  if (total == 0.0) {
    throw AllZeroSpectrum("top-" + std::to_string(k) +
                          " eigenvalue mass is zero");
  }
  return negative / total;
}

double network_heterophily(const ARDecomposition& ar) {
  const double attract_mass = ar.attract.squaredNorm();
  const double repel_mass = ar.repel.squaredNorm();
  if (attract_mass + repel_mass == 0.0) {
    throw AllZeroSpectrum("decomposition has no nonzero factors");
  }
  return repel_mass / (attract_mass + repel_mass);
}

Vector node_heterophily(const ARDecomposition& ar) {
  const Index n = ar.node_count();
  Vector scores(n);
  for (Index i = 0; i < n; ++i) {
    const double a = ar.attract.row(i).norm();
    const double r = ar.repel.row(i).norm();
    scores[i] = (a + r == 0.0) ? 0.0 : r / (a + r);
  }
  return scores;
}

double sim1(const ARDecomposition& ar, Index i, Index j) {
  check_node(ar, i);
  check_node(ar, j);
  return ar.attract.row(i).dot(ar.attract.row(j)) -
         ar.repel.row(i).dot(ar.repel.row(j));
}

double sim2(const ARDecomposition& ar, Index i, Index j) {
  check_node(ar, i);
  check_node(ar, j);
  return ar.attract.row(i).dot(ar.attract.row(j)) +
         ar.repel.row(i).dot(ar.repel.row(j));
}

double substitute_score(const ARDecomposition& ar, Index i, Index j) {
  return sim2(ar, i, j) - sim1(ar, i, j);
}

std::vector<std::pair<Index, double>> repel_neighbors(const ARDecomposition& ar,
                                                      Index i, Index top_m,
                                                      NeighborMetric metric) {
  check_node(ar, i);
  if (ar.repel.cols() == 0) {
    throw EmptyRepelSpace("decomposition has no repel dimensions");
  }
  if (top_m < 1) {
    throw IndexOutOfRange("top_m must be at least 1");
  }
  const Index n = ar.node_count();
  const Vector focal = ar.repel.row(i);
  const double focal_norm = focal.norm();

  std::vector<std::pair<Index, double>> scored;
  scored.reserve(static_cast<size_t>(n) - 1);
  for (Index j = 0; j < n; ++j) {
    if (j == i) continue;
    const double dot = focal.dot(ar.repel.row(j));
    if (metric == NeighborMetric::Dot) {
      scored.emplace_back(j, dot);
    } else {
      const double other_norm = ar.repel.row(j).norm();
      if (focal_norm == 0.0 || other_norm == 0.0) continue;
      scored.emplace_back(j, dot / (focal_norm * other_norm));
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  if (static_cast<Index>(scored.size()) > top_m) {
    scored.resize(static_cast<size_t>(top_m));
  }
  return scored;
}

}  // namespace arnet
