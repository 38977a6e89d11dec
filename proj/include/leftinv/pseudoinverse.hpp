#pragma once

// Moore-Penrose inverse of a left-invertible operator, its projections,
// the Cauchy dual and the family of all left inverses.

#include <algorithm>
#include <vector>

#include "leftinv/fredholm.hpp"
#include "leftinv/operator_spec.hpp"

namespace leftinv {

struct PenroseResiduals {
  double axa = 0.0;          // ||A X A - A||
  double xax = 0.0;          // ||X A X - X||
  double ax_hermitian = 0.0; // ||(A X)* - A X||
  double xa_hermitian = 0.0; // ||(X A)* - X A||
  double max() const { return std::max({axa, xax, ax_hermitian, xa_hermitian}); }
};

/// Spectral-norm residuals of the four Penrose identities.
PenroseResiduals penrose_residuals(const CMatrix& a, const CMatrix& x);

/// Everything derived from the guarded truncation T ((n + g) x n, g = lower band).
/// Square "working" operators live on the first n coordinates; `window(k)`
/// gives the leading block on which a product of k truncated factors agrees
/// with the infinite operator.
struct MpPackage {
  Truncation t;
  CMatrix t_dagger;     // n x (n + g), (T*T)^{-1} T*
  CMatrix range_proj;   // T T^dagger
  CMatrix defect_proj;  // I - T T^dagger
  double dagger_norm = 0.0;
  LeftInvertibilityCertificate certificate;

  Index n() const { return t.domain_dim; }
  Index guard() const { return t.spec->band().guard(); }
  /// Trailing coordinates where truncation effects live.
  Index margin() const { return 2 * guard() + 8; }

  /// Leading coordinates certified for products of `factors` truncated
  /// operators; 0 if none.
  Index window(int factors) const;
  /// window(factors), or WindowTooSmall if it is smaller than `needed`.
  Index require_window(int factors, Index needed = 1) const;

  CMatrix op() const { return t.matrix.topRows(n()); }
  CMatrix dagger() const { return t_dagger.leftCols(n()); }
  CMatrix defect() const { return defect_proj.topLeftCorner(n(), n()); }
};

/// Size that leaves `needed` certified coordinates for `factors`-fold products.
Index padded_size(const SpecPtr& spec, Index needed, int factors);

/// T^dagger by the closed formula (Cholesky solve of T*T against T*).
/// Throws NotLeftInvertible if the certificate fails.
MpPackage moore_penrose(const SpecPtr& spec, Index n, RankTolerance tol = {});

/// Orthonormal basis of ker(T*) seen through the leading `window` coordinates.
CMatrix defect_basis(const MpPackage& pkg, Index window);

struct CauchyDual {
  CMatrix matrix;               // T (T*T)^{-1}, (n + g) x n
  double dagger_is_adjoint = 0; // ||(T')^dagger - T*||
  double kernel_gap = 0;        // principal-angle gap between ker(T'*) and ker(T*)
};

CauchyDual cauchy_dual(const MpPackage& pkg);
/// Index of the Cauchy dual from sizes n and 2n.
int cauchy_dual_index(const SpecPtr& spec, Index n, RankTolerance tol = {});

/// Zero-pads a small block into an n x (n + g) parameter for left_inverse.
CMatrix embed_parameter(const MpPackage& pkg, const CMatrix& block);

/// L = T^dagger + A (I - T T^dagger).
CMatrix left_inverse(const MpPackage& pkg, const CMatrix& a);

struct LeftInverseParameter {
  CMatrix a_prime;        // L (I - T T^dagger)
  double left_residual;   // ||L T - I||
  double mismatch;        // ||A P - A' P|| against the reference parameter
};

/// Recovers A' with L = T^dagger + A'(I - T T^dagger) and compares it with `reference_a`.
LeftInverseParameter recover_parameter(const MpPackage& pkg, const CMatrix& l,
                                       const CMatrix& reference_a);

struct PerturbationResult {
  CMatrix left_inverse;  // (T^dagger S)^{-1} T^dagger
  double left_residual;  // ||L S - I||
  double gap;            // ||T - S|| on the truncation
  bool index_match;
};

/// Left inverse of S built from T's Moore-Penrose inverse; requires
/// ||T - S|| < 1 / ||T^dagger|| (PerturbationTooLarge otherwise).
PerturbationResult perturbation_left_inverse(const SpecPtr& t, const SpecPtr& s, Index n,
                                             RankTolerance tol = {});

struct TelescopeRow {
  int power = 0;
  Index window = 0;
  double deviation = 0.0;   // ||(I - T^k T^dagger^k) - sum_{j<k} T^j P T^dagger^j||
  double kernel_gap = 0.0;  // ker(T^dagger^k) vs span{T^j E : j < k}
};

/// One row per power 1..n_max; WindowTooSmall if the package cannot certify n_max.
std::vector<TelescopeRow> telescope_check(const MpPackage& pkg, int n_max);

}  // namespace leftinv
