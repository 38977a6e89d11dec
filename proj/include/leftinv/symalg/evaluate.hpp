#pragma once

// Numeric evaluation of expressions and normal forms on certified windows,
// the invertible dilation W of T, and finite-rank checks.

#include <map>
#include <vector>

#include "leftinv/basis.hpp"
#include "leftinv/symalg/normal_form.hpp"

namespace leftinv::symalg {

/// Applies words in T, Td, P, I (as the n x n working blocks of a package) to
/// a block of columns, right to left.
class Evaluator {
 public:
  explicit Evaluator(MpPackage pkg);

  const MpPackage& package() const { return pkg_; }

  CMatrix apply(Atom a, const CMatrix& x) const;
  CMatrix apply(const Expr& e, const CMatrix& x) const;
  CMatrix apply(const NormalForm& nf, const CMatrix& x) const;

  /// Leading window x window block; WindowTooSmall unless the package
  /// certifies `window` for the expression's word length.
  CMatrix evaluate(const Expr& e, Index window) const;
  CMatrix evaluate(const NormalForm& nf, Index window) const;

  /// Largest window certified for words of the given length.
  Index window_for(int word_length) const { return pkg_.window(word_length); }

 private:
  CMatrix columns(Index window) const;

  MpPackage pkg_;
  CMatrix t_, d_, p_;
};

/// Consistency checks compare at most this many leading coordinates.
inline constexpr Index kCheckWindow = 32;

/// Evaluation on the window certified for the expression's word length.
CMatrix evaluate(const Expr& e, const SpecPtr& spec, Index n);
CMatrix evaluate(const NormalForm& nf, const SpecPtr& spec, Index n);

/// max |evaluate(normalize(e)) - evaluate(e)| on the common window, divided by
/// max(1, largest entry of evaluate(e)). Residuals below are scaled the same way.
double soundness_deviation(const Expr& e, const Evaluator& ev);

/// Numeric D_m D_n (each corner summed from its definition) against the
/// closed form, max entry deviation on the window.
double corner_product_deviation(const Evaluator& ev, int m, int n);

struct DilationPackage {
  Index n = 0;
  Index window = 0;
  CMatrix w;      // [[Td, 0], [P, T]] on C^n + C^n
  CMatrix w_inv;  // [[T, P], [0, Td]]
  std::map<int, CMatrix> d_n_cache;  // D_k applied to the first `window` unit vectors (n x window)
  double product_residual = 0.0;     // |W W^-1 - I| on the window
  std::vector<double> power_residuals;          // entry k-1: |W^k - [[Td^k, 0], [D_k, T^k]]|
  std::vector<double> inverse_power_residuals;  // entry k-1: |W^-k - [[T^k, D_k], [0, Td^k]]|
  double max_residual() const;
};

/// WindowTooSmall if fewer than 8 coordinates are certified for k_max + 2 factors.
DilationPackage dilation(const MpPackage& pkg, int k_max);
DilationPackage dilation(const SpecPtr& spec, Index n, int k_max);

struct RankOneFactor {
  CMatrix matrix;                    // T^a P L^b on the window
  double rank_one_deviation = 0.0;   // ||F - x_a x'_b^*||
  double second_singular_ratio = 0.0;
};

/// F = T^a (I - T Td) L^b for the left inverse L chosen by `choice`.
RankOneFactor rank_one_factors(const MpPackage& pkg, int a, int b,
                               const LeftInverseChoice& choice = LeftInverseChoice::dagger());
RankOneFactor rank_one_factors(const SpecPtr& spec, int a, int b, const LeftInverseChoice& choice,
                               Index n);

struct CommutatorProfile {
  Index rank_estimate = 0;
  std::vector<double> sigma_profile;  // leading singular values
  Index symbolic_bound = 0;           // finite-rank support of normalize(xy - yx)
  bool laurent_vanishes = false;
};

CommutatorProfile commutator_compactness(const Expr& x, const Expr& y, const Evaluator& ev);
CommutatorProfile commutator_compactness(const Expr& x, const Expr& y, const SpecPtr& spec, Index n);

}  // namespace leftinv::symalg
