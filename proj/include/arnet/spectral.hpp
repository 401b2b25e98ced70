#pragma once

#include <optional>
#include <vector>

#include "arnet/completion.hpp"
#include "arnet/types.hpp"

namespace arnet {

// Full eigendecomposition of a symmetric matrix, sorted by descending
// |eigenvalue|. Magnitudes within 1e-12 (relative) count as tied — so a
// plus/minus pair orders deterministically even though the solver perturbs
// the two magnitudes in the last bits — and ties keep positive eigenvalues
// first, then the lower solver index. Each eigenvector is normalized so its
// first component larger than 1e-12 in magnitude is positive. Input must be
// symmetric within 1e-10 (relative to the largest entry); it is symmetrized
// before solving.
Spectrum eigendecompose(const Matrix& completed);

// Splits the top-k eigenpairs into attract columns sqrt(d_j) q_j (d_j > 0)
// and repel columns sqrt(-d_j) q_j (d_j < 0). Without `rank`, all nonzero
// pairs are kept. Eigenvalues with |d| <= 1e-8 * max|d| count as zero and are
// always dropped. `rank` outside [1, n] raises RankOutOfRange.
ARDecomposition split_ar(const Spectrum& spectrum,
                         std::optional<Index> rank = std::nullopt);

// attract*attract' - repel*repel'. An empty decomposition gives the zero
// matrix.
Matrix reconstruct(const ARDecomposition& ar);

// Off-diagonal squared error between the network weights and reconstruct(ar).
// When `normalized`, divides by the off-diagonal squared weight mass;
// ZeroNetwork if that mass is zero.
double reconstruction_error(const SymmetricNetwork& net,
                            const ARDecomposition& ar, bool normalized = true);

struct RankErrorPoint {
  Index k;
  double error;
};

// Normalized reconstruction error as a function of the split rank k, for one
// completion of the network. The completion is computed once; ranks outside
// [1, n] raise RankOutOfRange.
std::vector<RankErrorPoint> rank_error_curve(const SymmetricNetwork& net,
                                             CompletionStrategy strategy,
                                             const std::vector<Index>& k_range,
                                             const SvtOptions& options = {});

// Same curve for an already-completed matrix.
std::vector<RankErrorPoint> rank_error_curve(const SymmetricNetwork& net,
                                             const Matrix& completed,
                                             const std::vector<Index>& k_range);

// CSV with header "node,a_1..a_p,r_1..r_q". The node column holds labels when
// provided (one per node), otherwise 0-based indices.
void write_embeddings_csv(const std::string& path, const ARDecomposition& ar,
                          const std::vector<std::string>& labels = {});

struct EmbeddingFile {
  ARDecomposition ar;
  std::vector<std::string> labels;
};

EmbeddingFile read_embeddings_csv(const std::string& path);

// CSV with header "k,error".
void write_curve_csv(const std::string& path,
                     const std::vector<RankErrorPoint>& curve);

}  // namespace arnet
