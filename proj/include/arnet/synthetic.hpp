#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arnet/completion.hpp"
#include "arnet/types.hpp"

namespace arnet {

// Stochastic block model: symmetric d x d connection matrix plus one size per
// block.
struct BlockModel {
  Matrix connection;
  std::vector<Index> sizes;

  Index block_count() const { return connection.rows(); }
  Index node_count() const;
};

// Complete bipartite network on 2 * n_per nodes: weight 1 across sides, 0
// within a side. Nodes 0..n_per-1 form one side.
SymmetricNetwork generate_bipartite(Index n_per);

struct SandwichData {
  Matrix data;          // m^2 x 2m indicator rows, one per (first, second) pick
  Matrix cooccurrence;  // data' * data
};

// Two-part choice design: every row picks one of the first m items and one of
// the second m items. Co-occurrence counts are 1 across parts, 0 within a
// part off the diagonal, and m on the diagonal.
SandwichData generate_sandwich(Index m);

// [[diag(a), ones], [ones, diag(b)]] for positive length-n vectors a and b.
// Rank is 2n - 1 when (sum 1/a_i)(sum 1/b_j) == 1 and 2n otherwise.
Matrix generate_block_diag_matrix(const Vector& a, const Vector& b);

// Numerical rank: number of singular values above rel_tol * sigma_max.
// rel_tol <= 0 selects the default 1e-9 * max(rows, cols).
Index rank_oracle(const Matrix& m, double rel_tol = 0.0);

enum class SbmMode { Expected, Sampled };

// Expands a block model to its node-level network: expected edge
// probabilities, or one Bernoulli draw per dyad (requires connection entries
// in [0, 1]; ProbabilityOutOfRange otherwise). The diagonal is left at zero.
SymmetricNetwork expand_sbm(const BlockModel& model, SbmMode mode,
                            std::uint64_t seed = 0);

struct PsdWitness {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  // Indices of the first scanned 2x2 or 3x3 principal minor of the connection
  // matrix with negative determinant, if any.
  std::optional<std::vector<Index>> violated_minor;
  double minor_determinant = 0.0;
};

PsdWitness sbm_psd_witness(const BlockModel& model);

enum class PipelineMode { AttractRepel, AttractOnly };

// Runs the full pipeline on the expected network of `model` (nuclear-min
// completion, or the PSD-constrained variant under AttractOnly) and returns
// the smallest split rank whose normalized reconstruction error is below
// 1e-8.
Index sbm_rank_check(const BlockModel& model, PipelineMode mode,
                     const SvtOptions& options = {});

}  // namespace arnet
