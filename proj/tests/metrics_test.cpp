#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "arnet/completion.hpp"
#include "arnet/errors.hpp"
#include "arnet/metrics.hpp"
#include "arnet/spectral.hpp"
#include "arnet/synthetic.hpp"
#include "arnet/types.hpp"
#include "test_support.hpp"

using namespace arnet;
using testsupport::random_rotation;
using testsupport::random_symmetric;

namespace {

ARDecomposition make_ar(const Matrix& attract, const Matrix& repel) {
  ARDecomposition ar;
  ar.attract = attract;
  ar.repel = repel;
  ar.diagonal = attract.rowwise().squaredNorm() - repel.rowwise().squaredNorm();
  return ar;
}

}  // namespace

TEST_CASE("network heterophily of a PSD matrix is zero") {
  Matrix m = random_symmetric(6, 42);
  Matrix psd = m * m.transpose();  // Gram matrix, eigenvalues >= 0
  Spectrum s = eigendecompose(psd);
  for (Index k = 1; k <= 6; ++k) {
    CHECK(network_heterophily(s, k) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("network heterophily of the two-block spectrum is one half") {
  SymmetricNetwork net = generate_bipartite(4);
  Spectrum s = eigendecompose(net.weights());
  // Top two eigenvalues are +4 and -4: equal mass on both sides.
  CHECK(network_heterophily(s, 2) == doctest::Approx(0.5).epsilon(1e-12));
  // The single largest by magnitude is the positive one.
  CHECK(network_heterophily(s, 1) == doctest::Approx(0.0));
}

TEST_CASE("network heterophily weighs magnitudes, not counts") {
  Matrix m = Matrix::Zero(2, 2);
  m.diagonal() << -3.0, 1.0;
  Spectrum s = eigendecompose(m);
  CHECK(network_heterophily(s, 1) == doctest::Approx(1.0));
  CHECK(network_heterophily(s, 2) == doctest::Approx(0.75));
}

TEST_CASE("network heterophily validation") {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 1.0, 2.0, 3.0;
  Spectrum s = eigendecompose(m);
  CHECK_THROWS_AS(network_heterophily(s, 0), RankOutOfRange);
  CHECK_THROWS_AS(network_heterophily(s, 4), RankOutOfRange);
  Spectrum zero = eigendecompose(Matrix::Zero(3, 3));
  CHECK_THROWS_AS(network_heterophily(zero, 2), AllZeroSpectrum);
}

TEST_CASE("decomposition overload agrees with the spectrum overload") {
  Matrix m = random_symmetric(8, 43);
  Spectrum s = eigendecompose(m);
  for (Index k = 1; k <= 8; ++k) {
    ARDecomposition ar = split_ar(s, k);
    if (ar.source_rank() == 0) continue;
    CHECK(network_heterophily(ar) ==
          doctest::Approx(network_heterophily(s, k)).epsilon(1e-12));
  }
  ARDecomposition empty = split_ar(eigendecompose(Matrix::Zero(3, 3)));
  CHECK_THROWS_AS(network_heterophily(empty), AllZeroSpectrum);
}

TEST_CASE("node heterophily: balanced, pure, and isolated nodes") {
  Matrix attract(4, 1), repel(4, 1);
  attract << 1.0, 3.0, 0.0, 0.0;
  repel << 1.0, 1.0, 2.0, 0.0;
  ARDecomposition ar = make_ar(attract, repel);
  Vector h = node_heterophily(ar);
  CHECK(h[0] == doctest::Approx(0.5));         // equal parts
  CHECK(h[1] == doctest::Approx(0.25));        // attract-dominant
  CHECK(h[2] == doctest::Approx(1.0));         // pure repel
  CHECK(h[3] == doctest::Approx(0.0));         // isolated: defined as zero
}

TEST_CASE("two-block embeddings: similarity structure across the cut") {
  SymmetricNetwork net = generate_bipartite(4);
  CompletionResult completion = complete_nuclear_min(net);
  ARDecomposition ar = split_ar(eigendecompose(completion.completed), 2);
  REQUIRE(ar.attract.cols() == 1);
  REQUIRE(ar.repel.cols() == 1);

  // Same side (0 and 1): no edge affinity, full co-linking affinity.
  CHECK(sim1(ar, 0, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sim2(ar, 0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(substitute_score(ar, 0, 1) == doctest::Approx(1.0).epsilon(1e-10));

  // Opposite sides (0 and 4): the mirror image.
  CHECK(sim1(ar, 0, 4) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sim2(ar, 0, 4) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(substitute_score(ar, 0, 4) == doctest::Approx(-1.0).epsilon(1e-10));

  // Every node sits exactly between the two factors.
  Vector h = node_heterophily(ar);
  for (Index i = 0; i < 8; ++i) {
    CHECK(h[i] == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("substitute score is twice the repel alignment") {
  Matrix m = random_symmetric(7, 44);
  ARDecomposition ar = split_ar(eigendecompose(m));
  for (Index i = 0; i < 7; ++i) {
    for (Index j = 0; j < 7; ++j) {
      const double direct = 2.0 * ar.repel.row(i).dot(ar.repel.row(j));
      CHECK(substitute_score(ar, i, j) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("similarity functions validate node indices") {
  ARDecomposition ar = make_ar(Matrix::Ones(3, 1), Matrix::Ones(3, 1));
  CHECK_THROWS_AS(sim1(ar, -1, 0), IndexOutOfRange);
  CHECK_THROWS_AS(sim2(ar, 0, 3), IndexOutOfRange);
  CHECK_THROWS_AS(substitute_score(ar, 5, 0), IndexOutOfRange);
}

TEST_CASE("repel neighbor ranking under cosine") {
  Matrix attract = Matrix::Zero(5, 1);
  Matrix repel(5, 2);
  repel << 1.0, 0.0,   // focal
           2.0, 0.0,   // cosine +1
           0.0, 1.0,   // cosine 0
          -1.0, 0.0,   // cosine -1
           0.0, 0.0;   // zero vector: skipped under cosine
  ARDecomposition ar = make_ar(attract, repel);

  auto ranked = repel_neighbors(ar, 0, 10);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].first == 1);
  CHECK(ranked[0].second == doctest::Approx(1.0));
  CHECK(ranked[1].first == 2);
  CHECK(ranked[1].second == doctest::Approx(0.0));
  CHECK(ranked[2].first == 3);
  CHECK(ranked[2].second == doctest::Approx(-1.0));

  auto top1 = repel_neighbors(ar, 0, 1);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].first == 1);

  // A focal node with a zero repel vector has no cosine neighbors.
  CHECK(repel_neighbors(ar, 4, 3).empty());
}

TEST_CASE("repel neighbor ranking under dot products") {
  Matrix attract = Matrix::Zero(5, 1);
  Matrix repel(5, 2);
  repel << 1.0, 0.0,
           2.0, 0.0,
           0.0, 1.0,
          -1.0, 0.0,
           0.0, 0.0;
  ARDecomposition ar = make_ar(attract, repel);
  auto ranked = repel_neighbors(ar, 0, 10, NeighborMetric::Dot);
  REQUIRE(ranked.size() == 4);  // zero vectors stay in under dot
  CHECK(ranked[0].first == 1);  // dot 2
  CHECK(ranked[1].first == 2);  // dot 0, tie with node 4: lower index first
  CHECK(ranked[2].first == 4);
  CHECK(ranked[3].first == 3);  // dot -1
}

TEST_CASE("repel neighbor ties break toward the lower index") {
  Matrix attract = Matrix::Zero(4, 1);
  Matrix repel(4, 1);
  repel << 1.0, 3.0, 1.0, 2.0;  // all cosine 1 with the focal node
  ARDecomposition ar = make_ar(attract, repel);
  auto ranked = repel_neighbors(ar, 0, 3);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].first == 1);
  CHECK(ranked[1].first == 2);
  CHECK(ranked[2].first == 3);
}

TEST_CASE("repel neighbors validation") {
  ARDecomposition no_repel = make_ar(Matrix::Ones(3, 1), Matrix::Zero(3, 0));
  CHECK_THROWS_AS(repel_neighbors(no_repel, 0, 1), EmptyRepelSpace);

  ARDecomposition ar = make_ar(Matrix::Ones(3, 1), Matrix::Ones(3, 1));
  CHECK_THROWS_AS(repel_neighbors(ar, 3, 1), IndexOutOfRange);
  CHECK_THROWS_AS(repel_neighbors(ar, 0, 0), IndexOutOfRange);
}

TEST_CASE("all scores are invariant under factor rotations") {
  Matrix m = random_symmetric(8, 45);
  ARDecomposition ar = split_ar(eigendecompose(m));
  REQUIRE(ar.attract.cols() >= 2);
  REQUIRE(ar.repel.cols() >= 2);

  ARDecomposition rotated = ar;
  rotated.attract = ar.attract * random_rotation(ar.attract.cols(), 9001);
  rotated.repel = ar.repel * random_rotation(ar.repel.cols(), 9002);

  CHECK(network_heterophily(rotated) ==
        doctest::Approx(network_heterophily(ar)).epsilon(1e-12));
  Vector h0 = node_heterophily(ar), h1 = node_heterophily(rotated);
  CHECK((h0 - h1).cwiseAbs().maxCoeff() < 1e-12);
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) {
      CHECK(sim1(rotated, i, j) ==
            doctest::Approx(sim1(ar, i, j)).epsilon(1e-10));
      CHECK(sim2(rotated, i, j) ==
            doctest::Approx(sim2(ar, i, j)).epsilon(1e-10));
    }
  }
  auto before = repel_neighbors(ar, 0, 8);
  auto after = repel_neighbors(rotated, 0, 8);
  REQUIRE(before.size() == after.size());
  for (size_t t = 0; t < before.size(); ++t) {
    CHECK(before[t].first == after[t].first);
    CHECK(before[t].second == doctest::Approx(after[t].second).epsilon(1e-10));
  }
}
