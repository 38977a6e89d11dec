#pragma once

// Exact symbolic descriptions of banded operators on l2 of an enumerated
// index set, and their certified rectangular truncations.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/SparseCore>

#include "leftinv/index_space.hpp"
#include "leftinv/numerics.hpp"

namespace leftinv {

/// Band widths under the canonical enumeration: `lower` = max(i - j),
/// `upper` = max(j - i) over nonzero entries (i, j). A column j of the
/// operator lives in rows [j - upper, j + lower].
struct Band {
  Index lower = 0;
  Index upper = 0;
  Index guard() const { return std::max<Index>({lower, upper, Index{1}}); }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Sparse column: (row, value) pairs sorted by row.
using SparseColumn = std::vector<std::pair<Index, cd>>;

class OperatorSpec;
using SpecPtr = std::shared_ptr<const OperatorSpec>;

class OperatorSpec {
 public:
  /// T e_n = w_n e_{n+1}; w_n = head_weights[n] for n < head length, else tail_weight.
  struct WeightedShift {
    std::vector<cd> head_weights;
    cd tail_weight;
  };
  /// entry(i, j) = c_{i-j} on the Hardy basis of l2(N).
  struct ToeplitzSymbol {
    std::map<int, cd> laurent_coeffs;
    /// Degree at which a non-polynomial symbol's Fourier series was cut, if any.
    std::optional<int> truncation_degree;
  };
  struct BilateralShift {};
  /// [[a, b], [c, d]] on DisjointSum(domain(a), domain(d)); b and c may be zero (null).
  struct Block2x2 {
    SpecPtr a, b, c, d;
  };
  /// (a_0, a_1, ...) on N  ->  (..., 0, 0^, a_0, a_1, ...) on Z.
  struct InclusionNatToInt {};
  /// theta_{u, v} x = <x, v> u, with u and v finitely supported.
  struct RankOneTerm {
    CVector u;
    CVector v;
  };
  struct FiniteRankPerturbation {
    SpecPtr base;
    std::vector<RankOneTerm> terms;
  };
  struct ScalarShiftOf {
    SpecPtr base;
    cd lambda;
  };
  /// [[unilateral shift, 0], [inclusion, bilateral shift]] on N + Z.
  struct FailedWoldComposite {};

  using Variant = std::variant<WeightedShift, ToeplitzSymbol, BilateralShift, Block2x2,
                               InclusionNatToInt, FiniteRankPerturbation, ScalarShiftOf,
                               FailedWoldComposite>;

  /// Validates the variant's invariants; throws Error(SpecInvalid) on failure.
  explicit OperatorSpec(Variant v);

  const Variant& variant() const { return variant_; }
  std::string type_name() const;

  const IndexSpace& domain() const { return domain_; }
  const IndexSpace& codomain() const { return codomain_; }
  bool is_square() const { return domain_ == codomain_; }

  /// Band under the canonical enumeration; throws SpecInvalid if the
  /// operator is not banded there.
  Band band() const;
  bool is_banded() const { return band_.has_value(); }

  /// Column j of the infinite matrix, exact.
  SparseColumn column(Index j) const;

  /// <T e_j, e_i>.
  cd entry(Index i, Index j) const;

  /// Positions beyond which the operator's pattern is translation-periodic.
  Index structure_extent() const;

 private:
  Variant variant_;
  IndexSpace domain_;
  IndexSpace codomain_;
  std::optional<Band> band_;
  SpecPtr expansion_;  // FailedWoldComposite is evaluated through its Block2x2 form
};

inline SpecPtr make_spec(OperatorSpec::Variant v) {
  return std::make_shared<const OperatorSpec>(std::move(v));
}

SpecPtr unilateral_shift();
SpecPtr weighted_shift(std::vector<cd> head_weights, cd tail_weight);
SpecPtr toeplitz(std::map<int, cd> coeffs, std::optional<int> truncation_degree = std::nullopt);
SpecPtr bilateral_shift();
SpecPtr inclusion_nat_to_int();
SpecPtr block2x2(SpecPtr a, SpecPtr b, SpecPtr c, SpecPtr d);
SpecPtr finite_rank_perturbation(SpecPtr base, std::vector<OperatorSpec::RankOneTerm> terms);
SpecPtr scalar_shift_of(SpecPtr base, cd lambda);
SpecPtr failed_wold_composite();

/// Rectangular guarded truncation: columns are the first `domain_dim`
/// enumerated coordinates, rows extend `band.lower` further, so that
/// matrix * x is the exact infinite action for every x supported in the domain.
struct Truncation {
  CMatrix matrix;
  Index domain_dim = 0;
  SpecPtr spec;
};

Truncation truncate(const SpecPtr& spec, Index n);
/// Truncation with an explicit row count (>= n + lower); extra rows are zero.
CMatrix truncate_rows(const OperatorSpec& spec, Index n, Index rows);
Eigen::SparseMatrix<cd> truncate_sparse(const OperatorSpec& spec, Index n);

/// T* restricted to the first m coordinates: (m + band.upper) x m, exact.
CMatrix adjoint_truncation(const OperatorSpec& spec, Index m);
Eigen::SparseMatrix<cd> adjoint_truncation_sparse(const OperatorSpec& spec, Index m);

/// Exact T^k X (or (T*)^k X) for finitely supported columns; the row count
/// grows by one band width per application.
CMatrix apply_power(const OperatorSpec& spec, const CMatrix& x, int k);
CMatrix apply_adjoint_power(const OperatorSpec& spec, const CMatrix& x, int k);

}  // namespace leftinv
