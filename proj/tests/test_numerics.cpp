#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leftinv/pseudoinverse.hpp"
#include "support.hpp"

using namespace leftinv;

TEST_CASE("pinv satisfies the Penrose identities on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 9);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index rows = dim(rng), cols = dim(rng);
    const Index rank = std::uniform_int_distribution<Index>(1, std::min(rows, cols))(rng);
    const CMatrix a = support::random_rank(rng, rows, cols, rank);
    const CMatrix x = pinv(a);
    const double scale = spectral_norm(a) * spectral_norm(x);
    worst = std::max(worst, penrose_residuals(a, x).max() / scale);
    CHECK(numerical_rank_of(a) == rank);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("pinv of a full column rank matrix is the normal-equations left inverse") {
  std::mt19937_64 rng(3);
  const CMatrix a = support::random_matrix(rng, 12, 5);
  const CMatrix normal = (a.adjoint() * a).inverse() * a.adjoint();
  CHECK(support::max_abs(pinv(a) - normal) < 1e-12);
}

TEST_CASE("kernel basis is orthonormal and annihilated") {
  std::mt19937_64 rng(5);
  const CMatrix a = support::random_rank(rng, 6, 10, 4);
  const CMatrix k = kernel_basis(a);
  REQUIRE(k.cols() == 6);
  CHECK(support::max_abs(a * k) < 1e-10);
  CHECK(support::max_abs(k.adjoint() * k - CMatrix::Identity(6, 6)) < 1e-12);
}

TEST_CASE("rank cutoff is relative to the largest singular value") {
  Eigen::VectorXd sigma(3);
  sigma << 1e6, 1e-3, 1e-5;
  CHECK(numerical_rank(sigma) == 2);
  CHECK(numerical_rank(sigma, RankTolerance{1e-12}) == 3);
  CHECK(numerical_rank(sigma, RankTolerance{1e-8}) == 1);
  CHECK_THROWS_AS(RankTolerance::checked(0.0), Error);
  CHECK_THROWS_AS(RankTolerance::checked(1.5), Error);
}

TEST_CASE("invalid matrices are rejected") {
  CMatrix empty(0, 3);
  CHECK_THROWS_AS(svd_factor(empty), Error);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = cd(std::nan(""), 0.0);
  try {
    svd_factor(bad);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("SVD survives matrices with many repeated singular values") {
  // Block-structured orthonormal columns: singular values exactly 1 with
  // high multiplicity, the case where the divide-and-conquer SVD can break down.
  CMatrix q = CMatrix::Zero(96, 40);
  for (Index j = 0; j < 40; ++j) q(2 * j + 1, j) = 1.0;
  const auto f = svd_factor(q);
  CHECK(f.singular_values.allFinite());
  CHECK(std::abs(f.sigma_max() - 1.0) < 1e-12);
  CHECK(std::abs(f.sigma_min() - 1.0) < 1e-12);
  CHECK(max_overlap(q, q) == doctest::Approx(1.0));
}

TEST_CASE("subspace gap and overlap") {
  const CMatrix e01 = CMatrix::Identity(4, 2);
  CMatrix e12 = CMatrix::Zero(4, 2);
  e12(1, 0) = 1.0;
  e12(2, 1) = 1.0;
  CHECK(subspace_gap(e01, e01) < 1e-15);
  CHECK(subspace_gap(e01, e12) == doctest::Approx(1.0));
  CHECK(max_overlap(e01, e12) == doctest::Approx(1.0));
  CMatrix e3 = CMatrix::Zero(4, 1);
  e3(3, 0) = 1.0;
  CHECK(max_overlap(e01, e3) == 0.0);
}

TEST_CASE("inner product is linear in the first slot") {
  CVector a(2), b(2);
  a << cd(1, 2), cd(0, 1);
  b << cd(3, 0), cd(0, -1);
  const cd expected = a(0) * std::conj(b(0)) + a(1) * std::conj(b(1));
  CHECK(std::abs(inner(a, b) - expected) < 1e-15);
  CHECK(std::abs(inner(CVector(cd(0, 1) * a), b) - cd(0, 1) * expected) < 1e-15);
  CVector shorter(1);
  shorter << cd(2, 0);
  CHECK(std::abs(inner_padded(shorter, b) - cd(6, 0)) < 1e-15);
}
