#pragma once

#include <utility>
#include <vector>

#include "arnet/types.hpp"

namespace arnet {

// Fraction of the top-k eigenvalue mass (by |d|) that is negative:
//   sum of |d| over negative d in the top k / sum of |d| over the top k.
// 0 for PSD spectra, 1 for negative semidefinite ones. Requires 1 <= k <= n
// (RankOutOfRange) and a nonzero top-k mass (AllZeroSpectrum).
double network_heterophily(const Spectrum& spectrum, Index k);

// Same score computed from the kept factors of a decomposition, at
// k = source_rank: repel column mass over total column mass.
double network_heterophily(const ARDecomposition& ar);

// Per-node score ||r_i|| / (||a_i|| + ||r_i||); 0 for nodes with both parts
// zero.
Vector node_heterophily(const ARDecomposition& ar);

// One-mode similarity a_i . a_j - r_i . r_j: affinity of i and j linking to
// each other.
double sim1(const ARDecomposition& ar, Index i, Index j);

// Two-mode similarity a_i . a_j + r_i . r_j: affinity of i and j linking to
// the same third nodes.
double sim2(const ARDecomposition& ar, Index i, Index j);

// sim2 - sim1: large when i and j occupy the same structural role without
// linking to each other.
double substitute_score(const ARDecomposition& ar, Index i, Index j);

enum class NeighborMetric { Cosine, Dot };

// Top-m nodes ranked by similarity of repel vectors to node i's, descending,
// ties broken by ascending node index. The focal node is excluded. Under
// Cosine, nodes with a zero repel vector are excluded (an all-zero focal
// vector yields an empty list). Requires a nonempty repel space
// (EmptyRepelSpace) and a valid node (IndexOutOfRange).
std::vector<std::pair<Index, double>> repel_neighbors(
    const ARDecomposition& ar, Index i, Index top_m,
    NeighborMetric metric = NeighborMetric::Cosine);

}  // namespace arnet
