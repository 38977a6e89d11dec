#pragma once

// Dense complex linear algebra substrate: SVD, Moore-Penrose inverse,
// numerical rank and kernel extraction under an explicit relative cutoff.
//
// Everything is templated on the matrix expression so the same routines
// serve real and complex scalars. Reductions run in ascending index order
// (Eigen's default single-threaded kernels), so results are reproducible.

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "leftinv/error.hpp"

namespace leftinv {

using cd = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = Mat<cd>;
using CVector = Vec<cd>;
using RealVector = Eigen::VectorXd;

/// Singular values below `relative_cutoff * sigma_max` count as zero.
struct RankTolerance {
  double relative_cutoff = 1e-10;

  static RankTolerance checked(double cutoff) {
    if (!(cutoff > 0.0 && cutoff < 1.0)) {
      throw Error(ErrorKind::SpecInvalid,
                  "relative cutoff must lie in (0, 1), got " + std::to_string(cutoff));
    }
    return RankTolerance{cutoff};
  }
};

template <typename Scalar>
struct SvdFactors {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Mat<Scalar> left_vectors;
  Vec<Real> singular_values;
  Mat<Scalar> right_vectors;

  Real sigma_max() const { return singular_values.size() ? singular_values(0) : Real(0); }
  Real sigma_min() const {
    return singular_values.size() ? singular_values(singular_values.size() - 1) : Real(0);
  }
};

/// Rejects 0xN / Nx0 matrices and non-finite entries.
template <typename Derived>
void require_valid(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(ErrorKind::EmptyMatrix, "matrix has a zero dimension");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::NonFinite, "matrix contains NaN or Inf");
  }
}

/// Divide-and-conquer SVD; Eigen 3.4's BDCSVD occasionally returns NaNs on
/// matrices with many exactly repeated singular values, in which case the
/// one-sided Jacobi SVD is used instead.
template <typename Derived>
auto svd_factor(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  require_valid(a);
  Mat<Scalar> dense = a;
  Eigen::BDCSVD<Mat<Scalar>> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.matrixU().allFinite() && svd.matrixV().allFinite() && svd.singularValues().allFinite()) {
    return SvdFactors<Scalar>{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  }
  Eigen::JacobiSVD<Mat<Scalar>> jacobi(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdFactors<Scalar>{jacobi.matrixU(), jacobi.singularValues(), jacobi.matrixV()};
}

template <typename Derived>
auto singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using RealVec = Vec<typename Eigen::NumTraits<Scalar>::Real>;
  require_valid(a);
  Mat<Scalar> dense = a;
  Eigen::BDCSVD<Mat<Scalar>> svd(dense);
  if (svd.singularValues().allFinite()) return RealVec(svd.singularValues());
  return RealVec(Eigen::JacobiSVD<Mat<Scalar>>(dense).singularValues());
}

template <typename RealVec>
Eigen::Index numerical_rank(const RealVec& sigma, RankTolerance tol = {}) {
  if (sigma.size() == 0 || sigma(0) <= 0) return 0;
  const auto cutoff = tol.relative_cutoff * sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) >= cutoff) ++rank;
  return rank;
}

template <typename Derived>
Eigen::Index numerical_rank_of(const Eigen::MatrixBase<Derived>& a, RankTolerance tol = {}) {
  return numerical_rank(singular_values(a), tol);
}

template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return static_cast<double>(singular_values(a)(0));
}

/// Moore-Penrose inverse via the SVD; singular values under the cutoff are dropped.
template <typename Derived>
auto pinv(const Eigen::MatrixBase<Derived>& a, RankTolerance tol = {}) {
  using Scalar = typename Derived::Scalar;
  const auto f = svd_factor(a);
  const auto r = numerical_rank(f.singular_values, tol);
  Mat<Scalar> x = Mat<Scalar>::Zero(a.cols(), a.rows());
  for (Eigen::Index k = 0; k < r; ++k) {
    x.noalias() += (f.right_vectors.col(k) / Scalar(f.singular_values(k))) *
                   f.left_vectors.col(k).adjoint();
  }
  return x;
}

/// Orthonormal basis (as columns) of the numerical null space of `a`.
template <typename Derived>
auto kernel_basis(const Eigen::MatrixBase<Derived>& a, RankTolerance tol = {}) {
  using Scalar = typename Derived::Scalar;
  require_valid(a);
  Mat<Scalar> dense = a;
  Eigen::BDCSVD<Mat<Scalar>> svd(dense, Eigen::ComputeFullV);
  if (svd.matrixV().allFinite() && svd.singularValues().allFinite()) {
    const auto r = numerical_rank(Vec<typename Eigen::NumTraits<Scalar>::Real>(svd.singularValues()), tol);
    return Mat<Scalar>(svd.matrixV().rightCols(a.cols() - r));
  }
  Eigen::JacobiSVD<Mat<Scalar>> jacobi(dense, Eigen::ComputeFullV);
  const auto r = numerical_rank(Vec<typename Eigen::NumTraits<Scalar>::Real>(jacobi.singularValues()), tol);
  return Mat<Scalar>(jacobi.matrixV().rightCols(a.cols() - r));
}

/// Orthonormal basis of the column span of `a` (empty when `a` is numerically zero).
template <typename Derived>
auto orthonormal_span(const Eigen::MatrixBase<Derived>& a, RankTolerance tol = {}) {
  using Scalar = typename Derived::Scalar;
  if (a.cols() == 0 || a.rows() == 0) return Mat<Scalar>(a.rows(), 0);
  const auto f = svd_factor(a);
  return Mat<Scalar>(f.left_vectors.leftCols(numerical_rank(f.singular_values, tol)));
}

/// Sine of the largest principal angle between two column spans given by
/// orthonormal bases. Unequal dimensions give 1.
template <typename DerivedA, typename DerivedB>
double subspace_gap(const Eigen::MatrixBase<DerivedA>& qa, const Eigen::MatrixBase<DerivedB>& qb) {
  if (qa.cols() != qb.cols() || qa.rows() != qb.rows()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  using Scalar = typename DerivedA::Scalar;
  const Mat<Scalar> ra = qa - qb * (qb.adjoint() * qa);
  const Mat<Scalar> rb = qb - qa * (qa.adjoint() * qb);
  return std::max(spectral_norm(ra), spectral_norm(rb));
}

/// Cosine of the smallest principal angle: largest |<u, v>| over unit u, v in the spans.
template <typename DerivedA, typename DerivedB>
double max_overlap(const Eigen::MatrixBase<DerivedA>& qa, const Eigen::MatrixBase<DerivedB>& qb) {
  if (qa.cols() == 0 || qb.cols() == 0) return 0.0;
  return spectral_norm(qa.adjoint() * qb);
}

/// <a, b>, linear in the first slot.
template <typename DerivedA, typename DerivedB>
auto inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return b.dot(a);
}

/// <a, b> for vectors of possibly different lengths (missing tail entries are zero).
inline cd inner_padded(const CVector& a, const CVector& b) {
  const Eigen::Index m = std::min(a.size(), b.size());
  return inner(a.head(m), b.head(m));
}

/// Zero-extends (or cuts) a vector to length n.
inline CVector resized(const CVector& v, Eigen::Index n) {
  CVector out = CVector::Zero(n);
  const Eigen::Index m = std::min(n, v.size());
  out.head(m) = v.head(m);
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() ? static_cast<double>(a.cwiseAbs().maxCoeff()) : 0.0;
}

}  // namespace leftinv
