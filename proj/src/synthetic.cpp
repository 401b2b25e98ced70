#include "arnet/synthetic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <random>

#include "arnet/spectral.hpp"

namespace arnet {

Index BlockModel::node_count() const {
  return std::accumulate(sizes.begin(), sizes.end(), Index{0});
}

namespace {

void check_block_model(const BlockModel& model) {
  const Index d = model.connection.rows();
  if (model.connection.cols() != d || d < 1) {
    throw LengthMismatch("connection matrix is " + std::to_string(d) + "x" +
                         std::to_string(model.connection.cols()));
  }
  if (!model.connection.allFinite()) {
    throw NonFiniteWeight("connection matrix contains NaN or infinity");
  }
  for (Index j = 0; j < d; ++j) {
    for (Index i = j + 1; i < d; ++i) {
      if (model.connection(i, j) != model.connection(j, i)) {
        throw AsymmetricInput("connection matrix differs at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      }
    }
  }
  if (static_cast<Index>(model.sizes.size()) != d) {
    throw LengthMismatch("expected " + std::to_string(d) + " block sizes, got " +
                         std::to_string(model.sizes.size()));
  }
  for (Index s : model.sizes) {
    if (s < 1) {
      throw LengthMismatch("block sizes must be positive");
    }
  }
}

std::vector<Index> block_of_node(const BlockModel& model) {
  std::vector<Index> block;
  block.reserve(static_cast<size_t>(model.node_count()));
  for (size_t b = 0; b < model.sizes.size(); ++b) {
    for (Index i = 0; i < model.sizes[b]; ++i) {
      block.push_back(static_cast<Index>(b));
    }
  }
  return block;
}

}  // namespace

SymmetricNetwork generate_bipartite(Index n_per) {
  if (n_per < 1) {
    throw LengthMismatch("side size must be positive");
  }
  const Index n = 2 * n_per;
  Matrix w = Matrix::Zero(n, n);
  w.topRightCorner(n_per, n_per).setOnes();
  w.bottomLeftCorner(n_per, n_per).setOnes();
  return SymmetricNetwork(std::move(w));
}

SandwichData generate_sandwich(Index m) {
  if (m < 1) {
    throw LengthMismatch("part size must be positive");
  }
  SandwichData out;
  out.data = Matrix::Zero(m * m, 2 * m);
  for (Index first = 0; first < m; ++first) {
    for (Index second = 0; second < m; ++second) {
      const Index row = first * m + second;
      out.data(row, first) = 1.0;
      out.data(row, m + second) = 1.0;
    }
  }
  out.cooccurrence = out.data.transpose() * out.data;
  return out;
}

Matrix generate_block_diag_matrix(const Vector& a, const Vector& b) {
  const Index n = a.size();
  if (b.size() != n) {
    throw LengthMismatch("diagonal vectors have sizes " + std::to_string(n) +
                         " and " + std::to_string(b.size()));
  }
  if (n < 1) {
    throw LengthMismatch("diagonal vectors must be nonempty");
  }
  if ((a.array() <= 0.0).any() || (b.array() <= 0.0).any()) {
    throw NonPositiveDiagonal("all diagonal entries must be positive");
  }
  Matrix m = Matrix::Ones(2 * n, 2 * n);
  m.topLeftCorner(n, n) = Matrix(a.asDiagonal());
  m.bottomRightCorner(n, n) = Matrix(b.asDiagonal());
  return m;
}

Index rank_oracle(const Matrix& m, double rel_tol) {
  if (!m.allFinite()) {
    throw NumericalFailure("rank oracle input contains NaN or infinity");
  }
  if (m.size() == 0) return 0;
  if (rel_tol <= 0.0) {
    rel_tol = 1e-9 * static_cast<double>(std::max(m.rows(), m.cols()));
  }
  Eigen::BDCSVD<Matrix> svd(m);
  const Vector& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
  const double cutoff = rel_tol * sigma[0];
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff) ++rank;
  }
  return rank;
}

SymmetricNetwork expand_sbm(const BlockModel& model, SbmMode mode,
                            std::uint64_t seed) {
  check_block_model(model);
  const Index n = model.node_count();
  if (n < 2) {
    throw LengthMismatch("block model expands to fewer than 2 nodes");
  }
  const auto block = block_of_node(model);
  Matrix w = Matrix::Zero(n, n);
  if (mode == SbmMode::Expected) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        if (i != j) w(i, j) = model.connection(block[i], block[j]);
      }
    }
  } else {
    if ((model.connection.array() < 0.0).any() ||
        (model.connection.array() > 1.0).any()) {
      throw ProbabilityOutOfRange(
          "sampling requires connection entries in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double p = model.connection(block[i], block[j]);
        const double draw = unif(rng) < p ? 1.0 : 0.0;
        w(i, j) = draw;
        w(j, i) = draw;
      }
    }
  }
  return SymmetricNetwork(std::move(w));
}

PsdWitness sbm_psd_witness(const BlockModel& model) {
  check_block_model(model);
  const Matrix& b = model.connection;
  const Index d = b.rows();

  PsdWitness witness;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(b);
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("eigendecomposition of the connection matrix failed");
  }
  witness.min_eigenvalue = eig.eigenvalues().minCoeff();
  witness.is_psd = witness.min_eigenvalue >= -1e-10;

  // A 2x2 principal minor b_ii * b_jj - b_ij^2 < 0, or a 3x3 one, certifies
  // indefiniteness without any spectral computation.
  for (Index i = 0; i < d && !witness.violated_minor; ++i) {
    for (Index j = i + 1; j < d && !witness.violated_minor; ++j) {
      const double det = b(i, i) * b(j, j) - b(i, j) * b(i, j);
      if (det < 0.0) {
        witness.violated_minor = {{i, j}};
        witness.minor_determinant = det;
      }
    }
  }
  for (Index i = 0; i < d && !witness.violated_minor; ++i) {
    for (Index j = i + 1; j < d && !witness.violated_minor; ++j) {
      for (Index k = j + 1; k < d && !witness.violated_minor; ++k) {
        const double det =
            b(i, i) * (b(j, j) * b(k, k) - b(j, k) * b(j, k)) -
            b(i, j) * (b(i, j) * b(k, k) - b(j, k) * b(k, i)) +
            b(i, k) * (b(i, j) * b(j, k) - b(j, j) * b(i, k));
        if (det < 0.0) {
          witness.violated_minor = {{i, j, k}};
          witness.minor_determinant = det;
        }
      }
    }
  }
  return witness;
}

Index sbm_rank_check(const BlockModel& model, PipelineMode mode,
                     const SvtOptions& options) {
  const SymmetricNetwork net = expand_sbm(model, SbmMode::Expected);
  const CompletionResult completion =
      mode == PipelineMode::AttractOnly
          ? complete_psd_nuclear_min(net, options)
          : complete_nuclear_min(net, options);

  std::vector<Index> ks(static_cast<size_t>(net.size()));
  std::iota(ks.begin(), ks.end(), Index{1});
  const auto curve = rank_error_curve(net, completion.completed, ks);
  for (const auto& point : curve) {
    if (point.error < 1e-8) return point.k;
  }
  return net.size();
}

}  // namespace arnet
