#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "arnet/errors.hpp"

namespace arnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Averages a nearly-symmetric matrix with its transpose. The result is
// exactly symmetric entry for entry, since (m_ij + m_ji)/2 is evaluated with
// the same operands on both sides.
Matrix symmetrized(const Matrix& m);

// Undirected weighted network on n >= 2 nodes. The weight matrix is exactly
// symmetric; self-edge weights may be stored but the diagonal is treated as
// unobserved by the whole pipeline unless `diagonal_observed` says otherwise.
class SymmetricNetwork {
 public:
  explicit SymmetricNetwork(Matrix weights, bool diagonal_observed = false,
                            std::vector<std::string> node_labels = {});

  Index size() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  bool diagonal_observed() const { return diagonal_observed_; }
  const std::vector<std::string>& node_labels() const { return labels_; }

  // Weight matrix with the diagonal zeroed out.
  Matrix off_diagonal() const;

 private:
  Matrix weights_;
  bool diagonal_observed_;
  std::vector<std::string> labels_;
};

// Eigendecomposition of a completed symmetric matrix, ordered by descending
// |eigenvalue|. Column j of `eigenvectors` pairs with `eigenvalues[j]`.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;

  Index size() const { return eigenvalues.size(); }
};

// Signed low-rank factorization M ~ attract*attract' - repel*repel' + the
// implied nuisance diagonal. Either factor may have zero columns; both always
// have one row per node.
struct ARDecomposition {
  Matrix attract;   // n x p, columns are sqrt(d_j) * q_j for d_j > 0
  Matrix repel;     // n x q, columns are sqrt(-d_j) * q_j for d_j < 0
  Vector diagonal;  // diag(attract*attract' - repel*repel')

  Index node_count() const { return attract.rows(); }
  Index source_rank() const { return attract.cols() + repel.cols(); }
};

}  // namespace arnet
