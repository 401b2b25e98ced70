#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arnet/types.hpp"

namespace arnet {

struct BcvOptions {
  int folds = 10;
  std::vector<Index> k_grid;  // empty -> 1 .. (n - ceil(n/folds) - 1)
  std::uint64_t seed = 0;
};

struct BcvLossRow {
  Index k;
  double mean_loss;   // NaN when every fold pair was skipped
  int skipped_folds;  // fold pairs skipped for this k (rank-deficient fit)
};

struct BcvResult {
  Index k_best;
  std::vector<BcvLossRow> table;
  int folds;
  std::uint64_t seed;
};

// Seeded partition of 0..n-1 into `folds` near-equal groups, each sorted
// ascending. The same partition is used for rows and columns.
std::vector<std::vector<Index>> bcv_folds(Index n, int folds,
                                          std::uint64_t seed);

// Gabriel-style holdout: estimates the block at (held_rows x held_cols) from
// the complementary blocks as A12 * pinv_k(A22) * A21, where pinv_k is the
// rank-k truncated pseudo-inverse (singular values below 1e-10 * sigma_max
// count as zero). Raises DegenerateBlock when rank(A22) < k. The held-out
// entries themselves never enter the computation.
Matrix bcv_holdout_estimate(const Matrix& m, const std::vector<Index>& held_rows,
                            const std::vector<Index>& held_cols, Index k);

// Bi-cross-validation rank selection on the raw weight matrix. Every ordered
// fold pair is held out in turn; squared estimation error is accumulated over
// held-out cells, excluding diagonal cells of the original matrix. Fold pairs
// whose fit block is rank-deficient below k are skipped and counted. k_best
// is the grid value with the smallest mean loss (ties to the smaller k).
// Requires 2 <= folds <= n/2 (FoldTooLarge) and a grid within
// [1, n - ceil(n/folds) - 1] (RankOutOfRange).
BcvResult bcv_select_rank(const SymmetricNetwork& net,
                          const BcvOptions& options = {});

// CSV with header "k,mean_loss,skipped_folds".
void write_bcv_csv(const std::string& path, const BcvResult& result);

}  // namespace arnet
