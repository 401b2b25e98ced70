#include "arnet/completion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace arnet {

std::string strategy_name(CompletionStrategy strategy) {
  switch (strategy) {
    case CompletionStrategy::NuclearMin: return "nuclear-min";
    case CompletionStrategy::PsdNuclearMin: return "psd-nuclear-min";
    case CompletionStrategy::ZeroDiagonal: return "zero-diag";
    case CompletionStrategy::DegreeDiagonal: return "degree-diag";
    case CompletionStrategy::Fixed: return "fixed";
  }
  return "?";
}

CompletionStrategy parse_strategy(const std::string& name) {
  if (name == "nuclear-min") return CompletionStrategy::NuclearMin;
  if (name == "psd-nuclear-min") return CompletionStrategy::PsdNuclearMin;
  if (name == "zero-diag") return CompletionStrategy::ZeroDiagonal;
  if (name == "degree-diag") return CompletionStrategy::DegreeDiagonal;
  throw Error("UnknownStrategy",
              "\"" + name +
                  "\" (expected nuclear-min, psd-nuclear-min, zero-diag, or "
                  "degree-diag)");
}

SvtOptions SvtOptions::resolved(Index n) const {
  SvtOptions r = *this;
  const double nn = static_cast<double>(n);
  if (r.tau <= 0.0) r.tau = 5.0 * nn;
  if (r.step <= 0.0) {
    // 1.2 / (fraction of entries observed); the dual ascent needs step < 2,
    // which the formula only violates at n = 2 (clamped there).
    r.step = std::min(1.2 * nn * nn / (nn * nn - nn), 1.9);
  }
  if (r.tol <= 0.0 || !std::isfinite(r.tol)) {
    throw Error("InvalidOptions", "tol must be positive");
  }
  if (r.max_iter < 1) {
    throw Error("InvalidOptions", "max_iter must be at least 1");
  }
  return r;
}

namespace {

// Soft-threshold the eigenvalues of a symmetric matrix by tau; `psd` composes
// the projection onto the PSD cone into the same spectral map, which shares
// the eigenbasis.
Matrix spectral_shrink(const Matrix& y, double tau, bool psd,
                       Eigen::SelfAdjointEigenSolver<Matrix>& eig) {
  eig.compute(y);
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("eigendecomposition failed inside the solver");
  }
  Vector d = eig.eigenvalues();
  for (Index i = 0; i < d.size(); ++i) {
    if (psd) {
      d[i] = std::max(d[i] - tau, 0.0);
    } else {
      d[i] = d[i] > 0.0 ? std::max(d[i] - tau, 0.0)
                        : -std::max(-d[i] - tau, 0.0);
    }
  }
  return eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().transpose();
}

double nuclear_norm_of(const Matrix& m,
                       Eigen::SelfAdjointEigenSolver<Matrix>& eig) {
  eig.compute(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("eigendecomposition failed on the completed matrix");
  }
  return eig.eigenvalues().cwiseAbs().sum();
}

CompletionResult svt_complete(const SymmetricNetwork& net,
                              const SvtOptions& options, bool psd) {
  const Index n = net.size();
  const SvtOptions opts = options.resolved(n);
  const Matrix target = net.off_diagonal();
  const double target_norm = target.norm();

  CompletionResult result;
  result.strategy =
      psd ? CompletionStrategy::PsdNuclearMin : CompletionStrategy::NuclearMin;

  if (target_norm == 0.0) {
    // Nothing to fit: the zero matrix is the minimizer.
    result.completed = Matrix::Zero(n, n);
    result.diagonal = Vector::Zero(n);
    return result;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  Matrix y = Matrix::Zero(n, n);
  Matrix x;
  Matrix gap;
  double residual = std::numeric_limits<double>::infinity();
  Index iter = 0;
  while (iter < opts.max_iter) {
    x = symmetrized(spectral_shrink(y, opts.tau, psd, eig));
    ++iter;
    gap = target - x;
    gap.diagonal().setZero();
    residual = gap.norm() / target_norm;
    if (residual <= opts.tol) break;
    y.noalias() += opts.step * gap;
  }

  Matrix completed = target;
  completed.diagonal() = x.diagonal();
  if (psd) {
    // Snapping the off-diagonal can leave the matrix slightly indefinite;
    // shifting the diagonal restores exact feasibility of the PSD cone
    // without touching the observed entries.
    eig.compute(completed, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    if (min_eig < 0.0) {
      completed.diagonal().array() -= min_eig;
    }
  }

  result.completed = completed;
  result.diagonal = completed.diagonal();
  result.iterations = iter;
  result.residual = residual;
  result.converged = residual <= opts.tol;
  result.nuclear_norm = nuclear_norm_of(completed, eig);
  return result;
}

CompletionResult fixed_completion(const SymmetricNetwork& net,
                                  const Vector& diagonal,
                                  CompletionStrategy strategy) {
  const Index n = net.size();
  if (diagonal.size() != n) {
    throw LengthMismatch("diagonal has " + std::to_string(diagonal.size()) +
                         " entries for " + std::to_string(n) + " nodes");
  }
  if (!diagonal.allFinite()) {
    throw NonFiniteWeight("fixed diagonal contains NaN or infinity");
  }
  CompletionResult result;
  result.completed = net.off_diagonal();
  result.completed.diagonal() = diagonal;
  result.diagonal = diagonal;
  result.strategy = strategy;
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  result.nuclear_norm = nuclear_norm_of(result.completed, eig);
  return result;
}

}  // namespace

CompletionResult complete_nuclear_min(const SymmetricNetwork& net,
                                      const SvtOptions& options) {
  return svt_complete(net, options, false);
}

CompletionResult complete_psd_nuclear_min(const SymmetricNetwork& net,
                                          const SvtOptions& options) {
  return svt_complete(net, options, true);
}

CompletionResult complete_zero_diagonal(const SymmetricNetwork& net) {
  return fixed_completion(net, Vector::Zero(net.size()),
                          CompletionStrategy::ZeroDiagonal);
}

CompletionResult complete_degree_diagonal(const SymmetricNetwork& net) {
  return fixed_completion(net, net.off_diagonal().rowwise().sum(),
                          CompletionStrategy::DegreeDiagonal);
}

CompletionResult complete_fixed(const SymmetricNetwork& net,
                                const Vector& diagonal) {
  return fixed_completion(net, diagonal, CompletionStrategy::Fixed);
}

CompletionResult complete(const SymmetricNetwork& net,
                          CompletionStrategy strategy,
                          const SvtOptions& options) {
  switch (strategy) {
    case CompletionStrategy::NuclearMin:
      return complete_nuclear_min(net, options);
    case CompletionStrategy::PsdNuclearMin:
      return complete_psd_nuclear_min(net, options);
    case CompletionStrategy::ZeroDiagonal:
      return complete_zero_diagonal(net);
    case CompletionStrategy::DegreeDiagonal:
      return complete_degree_diagonal(net);
    case CompletionStrategy::Fixed:
      break;
  }
  throw Error("UnknownStrategy", "fixed completion needs an explicit diagonal");
}

}  // namespace arnet
