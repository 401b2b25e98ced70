#include "arnet/types.hpp"

#include <cmath>
#include <utility>

namespace arnet {

Matrix symmetrized(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

SymmetricNetwork::SymmetricNetwork(Matrix weights, bool diagonal_observed,
                                   std::vector<std::string> node_labels)
    : weights_(std::move(weights)),
      diagonal_observed_(diagonal_observed),
      labels_(std::move(node_labels)) {
  const Index n = weights_.rows();
  if (weights_.cols() != n) {
    throw LengthMismatch("weight matrix is " + std::to_string(n) + "x" +
                         std::to_string(weights_.cols()));
  }
  if (n < 2) {
    throw Error("InvalidNetwork", "a network needs at least 2 nodes");
  }
  if (!weights_.allFinite()) {
    throw NonFiniteWeight("weights contain NaN or infinity");
  }
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (weights_(i, j) != weights_(j, i)) {
        throw AsymmetricInput("weights differ at (" + std::to_string(i) + "," +
                              std::to_string(j) + "): " +
                              std::to_string(weights_(i, j)) + " vs " +
                              std::to_string(weights_(j, i)));
      }
    }
  }
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != n) {
    throw LengthMismatch("expected " + std::to_string(n) + " node labels, got " +
                         std::to_string(labels_.size()));
  }
}

Matrix SymmetricNetwork::off_diagonal() const {
  Matrix od = weights_;
  od.diagonal().setZero();
  return od;
}

}  // namespace arnet
