#include "arnet/rank_select.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

namespace arnet {

namespace {

constexpr double kPinvRel = 1e-10;

std::vector<Index> complement_of(Index n, const std::vector<Index>& held) {
  std::vector<bool> is_held(static_cast<size_t>(n), false);
  for (Index i : held) {
    if (i < 0 || i >= n) {
      throw IndexOutOfRange("fold index " + std::to_string(i) +
                            " not in [0, " + std::to_string(n) + ")");
    }
    is_held[static_cast<size_t>(i)] = true;
  }
  std::vector<Index> kept;
  kept.reserve(static_cast<size_t>(n) - held.size());
  for (Index i = 0; i < n; ++i) {
    if (!is_held[static_cast<size_t>(i)]) kept.push_back(i);
  }
  return kept;
}

Matrix submatrix(const Matrix& m, const std::vector<Index>& rows,
                 const std::vector<Index>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    for (size_t i = 0; i < rows.size(); ++i) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

// Shared part of the Gabriel estimator: with A22 = U S V', the rank-k
// estimate of the held-out block is (A12 V_k) S_k^-1 (U_k' A21), so the two
// projected factors can be reused for every k.
struct HoldoutFit {
  Matrix left;    // A12 * V
  Matrix right;   // U' * A21
  Vector sigma;
  Index rank = 0;
};

HoldoutFit fit_holdout(const Matrix& m, const std::vector<Index>& held_rows,
                       const std::vector<Index>& held_cols) {
  const Index n = m.rows();
  const auto kept_rows = complement_of(n, held_rows);
  const auto kept_cols = complement_of(n, held_cols);
  const Matrix a12 = submatrix(m, held_rows, kept_cols);
  const Matrix a22 = submatrix(m, kept_rows, kept_cols);
  const Matrix a21 = submatrix(m, kept_rows, held_cols);

  Eigen::BDCSVD<Matrix> svd(a22, Eigen::ComputeThinU | Eigen::ComputeThinV);
  HoldoutFit fit;
  fit.sigma = svd.singularValues();
  const double sigma_max = fit.sigma.size() > 0 ? fit.sigma[0] : 0.0;
  const double cutoff = kPinvRel * sigma_max;
  fit.rank = 0;
  for (Index i = 0; i < fit.sigma.size(); ++i) {
    if (fit.sigma[i] > cutoff && fit.sigma[i] > 0.0) ++fit.rank;
  }
  fit.left = a12 * svd.matrixV();
  fit.right = svd.matrixU().transpose() * a21;
  return fit;
}

}  // namespace

std::vector<std::vector<Index>> bcv_folds(Index n, int folds,
                                          std::uint64_t seed) {
  if (folds < 2 || static_cast<Index>(folds) > n / 2) {
    throw FoldTooLarge("folds " + std::to_string(folds) +
                       " not in [2, n/2] for n = " + std::to_string(n));
  }
  std::vector<Index> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<Index>> partition(static_cast<size_t>(folds));
  for (size_t i = 0; i < perm.size(); ++i) {
    partition[i % static_cast<size_t>(folds)].push_back(perm[i]);
  }
  for (auto& fold : partition) std::sort(fold.begin(), fold.end());
  return partition;
}

Matrix bcv_holdout_estimate(const Matrix& m, const std::vector<Index>& held_rows,
                            const std::vector<Index>& held_cols, Index k) {
  if (k < 1) {
    throw RankOutOfRange("rank " + std::to_string(k) + " must be positive");
  }
  HoldoutFit fit = fit_holdout(m, held_rows, held_cols);
  if (fit.rank < k) {
    throw DegenerateBlock("fit block has rank " + std::to_string(fit.rank) +
                          " < requested " + std::to_string(k));
  }
  return fit.left.leftCols(k) *
         fit.sigma.head(k).cwiseInverse().asDiagonal() * fit.right.topRows(k);
}

BcvResult bcv_select_rank(const SymmetricNetwork& net,
                          const BcvOptions& options) {
  const Index n = net.size();
  const int folds = options.folds;
  if (folds < 2 || static_cast<Index>(folds) > n / 2) {
    throw FoldTooLarge("folds " + std::to_string(folds) +
                       " not in [2, n/2] for n = " + std::to_string(n));
  }
  const Index max_fold_size = (n + folds - 1) / folds;
  const Index k_max = n - max_fold_size - 1;

  std::vector<Index> grid = options.k_grid;
  if (grid.empty()) {
    grid.resize(static_cast<size_t>(k_max));
    std::iota(grid.begin(), grid.end(), Index{1});
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (Index k : grid) {
    if (k < 1 || k > k_max) {
      throw RankOutOfRange("k " + std::to_string(k) + " not in [1, " +
                           std::to_string(k_max) + "] for n = " +
                           std::to_string(n) + ", folds = " +
                           std::to_string(folds));
    }
  }

  const Matrix& m = net.weights();
  const auto partition = bcv_folds(n, folds, options.seed);

  std::vector<double> total_sq(grid.size(), 0.0);
  std::vector<long long> total_count(grid.size(), 0);
  std::vector<int> skipped(grid.size(), 0);

  Matrix estimate;
  for (int fr = 0; fr < folds; ++fr) {
    for (int fc = 0; fc < folds; ++fc) {
      const auto& held_rows = partition[static_cast<size_t>(fr)];
      const auto& held_cols = partition[static_cast<size_t>(fc)];
      const HoldoutFit fit = fit_holdout(m, held_rows, held_cols);

      estimate = Matrix::Zero(static_cast<Index>(held_rows.size()),
                              static_cast<Index>(held_cols.size()));
      Index used = 0;
      for (size_t g = 0; g < grid.size(); ++g) {
        const Index k = grid[g];
        if (k > fit.rank) {
          ++skipped[g];
          continue;
        }
        while (used < k) {
          estimate.noalias() += (1.0 / fit.sigma[used]) * fit.left.col(used) *
                                fit.right.row(used);
          ++used;
        }
        double sq = 0.0;
        long long count = 0;
        for (size_t b = 0; b < held_cols.size(); ++b) {
          for (size_t a = 0; a < held_rows.size(); ++a) {
            if (held_rows[a] == held_cols[b]) continue;  // diagonal cell
            const double diff = m(held_rows[a], held_cols[b]) -
                                estimate(static_cast<Index>(a),
                                         static_cast<Index>(b));
            sq += diff * diff;
            ++count;
          }
        }
        total_sq[g] += sq;
        total_count[g] += count;
      }
    }
  }

  BcvResult result;
  result.folds = folds;
  result.seed = options.seed;
  result.k_best = -1;
  double best = std::numeric_limits<double>::infinity();
  result.table.reserve(grid.size());
  for (size_t g = 0; g < grid.size(); ++g) {
    const double mean = total_count[g] > 0
                            ? total_sq[g] / static_cast<double>(total_count[g])
                            : std::numeric_limits<double>::quiet_NaN();
    result.table.push_back({grid[g], mean, skipped[g]});
    if (total_count[g] > 0 && mean < best) {
      best = mean;
      result.k_best = grid[g];
    }
  }
  if (result.k_best < 0) {
    throw DegenerateBlock(
        "every fold pair was rank-deficient for every requested k");
  }
  return result;
}

void write_bcv_csv(const std::string& path, const BcvResult& result) {
  std::ofstream out(path);
  if (!out) {
    throw MalformedFile("cannot write " + path);
  }
  out << "k,mean_loss,skipped_folds\n";
  char buf[40];
  for (const auto& row : result.table) {
    std::snprintf(buf, sizeof buf, "%.17g", row.mean_loss);
    out << row.k << "," << buf << "," << row.skipped_folds << "\n";
  }
  if (!out.good()) {
    throw MalformedFile("write failed for " + path);
  }
}

}  // namespace arnet
