#pragma once

#include "arnet/types.hpp"

namespace arnet {

enum class CompletionStrategy {
  NuclearMin,
  PsdNuclearMin,
  ZeroDiagonal,
  DegreeDiagonal,
  Fixed,
};

std::string strategy_name(CompletionStrategy strategy);
CompletionStrategy parse_strategy(const std::string& name);

// Singular value thresholding parameters. Fields <= 0 are replaced by the
// size-dependent defaults tau = 5n and step = 1.2 * n^2 / (n^2 - n) when the
// solver runs; the step default is clamped to 1.9 because the dual ascent
// requires step < 2 (the formula only exceeds that at n = 2).
struct SvtOptions {
  double tau = 0.0;
  double step = 0.0;
  double tol = 1e-4;
  Index max_iter = 10000;

  SvtOptions resolved(Index n) const;
};

struct CompletionResult {
  Matrix completed;   // off-diagonal equals the input exactly
  Vector diagonal;    // the filled-in diagonal
  double nuclear_norm = 0.0;
  Index iterations = 0;
  double residual = 0.0;
  bool converged = true;  // false when max_iter hit with residual > tol
  CompletionStrategy strategy = CompletionStrategy::NuclearMin;
};

// Fills the unobserved diagonal so that the completed matrix has (near-)
// minimal nuclear norm, by singular value thresholding:
//
//   Y <- 0
//   repeat: X <- shrink(Y, tau);  Y <- Y + step * offdiag(P - X)
//   until ||offdiag(P - X)||_F / ||offdiag(P)||_F <= tol
//
// where shrink soft-thresholds the singular values by tau. Iterates stay
// symmetric, so shrink is evaluated on the eigenvalues: each d maps to
// sign(d) * max(|d| - tau, 0), which equals the SVD soft-threshold for a
// symmetric matrix. After convergence the off-diagonal is snapped to the
// input exactly and the diagonal is read off the final iterate. A non-
// converged run still returns its last iterate, flagged via `converged`.
CompletionResult complete_nuclear_min(const SymmetricNetwork& net,
                                      const SvtOptions& options = {});

// Same iteration with a projection onto the PSD cone composed into the
// shrink step (eigenvalues map to max(d - tau, 0)). After the off-diagonal
// snap, the diagonal is shifted up by |min eigenvalue| if that snap left the
// matrix indefinite, so the result is always PSD.
CompletionResult complete_psd_nuclear_min(const SymmetricNetwork& net,
                                          const SvtOptions& options = {});

// Diagonal fixed at zero.
CompletionResult complete_zero_diagonal(const SymmetricNetwork& net);

// Diagonal fixed at the node degrees d_i = sum_{j != i} w_ij.
CompletionResult complete_degree_diagonal(const SymmetricNetwork& net);

// Diagonal fixed at an explicit length-n vector.
CompletionResult complete_fixed(const SymmetricNetwork& net,
                                const Vector& diagonal);

// Dispatch by strategy (Fixed is not dispatchable here: it needs a vector).
CompletionResult complete(const SymmetricNetwork& net,
                          CompletionStrategy strategy,
                          const SvtOptions& options = {});

}  // namespace arnet
