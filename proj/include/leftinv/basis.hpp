#pragma once

// Schauder basis T^j x0 of an analytic index -1 operator and its dual basis
// (L*)^j x0 for a chosen left inverse L.

#include <iosfwd>
#include <vector>

#include "leftinv/pseudoinverse.hpp"

namespace leftinv {

/// Which left inverse generates the dual basis: T^dagger, or
/// T^dagger + A (I - T T^dagger) with a small dense A zero-padded to the truncation.
struct LeftInverseChoice {
  enum class Kind { Dagger, Custom };
  Kind kind = Kind::Dagger;
  CMatrix a_block;

  static LeftInverseChoice dagger() { return {}; }
  static LeftInverseChoice custom(CMatrix a) { return {Kind::Custom, std::move(a)}; }
};

/// The left inverse L described by `choice`, as an n x (n + g) matrix.
CMatrix resolve_left_inverse(const MpPackage& pkg, const LeftInverseChoice& choice);

struct BasisPair {
  std::vector<CVector> x;       // T^j x0, exact finite support
  std::vector<CVector> x_dual;  // (L*)^j x0 on the first n coordinates
  LeftInverseChoice left_inverse_used;
  int count = 0;
  CVector x0;
  Index n = 0;
};

/// Unit vector spanning ker T*, first non-negligible coordinate real positive.
CVector wandering_vector(const MpPackage& pkg);

/// Throws IndexNotMinusOne, NotAnalytic, or WindowTooSmall when the dual
/// orbit reaches the truncation edge.
BasisPair schauder_basis(const SpecPtr& spec, const LeftInverseChoice& choice, int j_max, Index n);
/// Same, reusing an existing package and skipping the index/analyticity preconditions.
BasisPair schauder_basis(const MpPackage& pkg, const LeftInverseChoice& choice, int j_max);

/// max |<x_m, x'_j> - delta_mj| over m, j < count.
double biorthogonality_check(const BasisPair& pair);

struct Expansion {
  std::vector<cd> coeffs;                    // <f, x'_j>
  std::vector<double> reconstruction_error;  // entry J-1: ||f - sum_{j<J} c_j x_j||
};

Expansion expand(const CVector& f, const BasisPair& pair);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// (sigma_min^2, sigma_max^2) of the truncation: frame bounds of {T e_n}.
FrameBounds frame_image_bounds(const SpecPtr& spec, Index n);

/// Columns per basis index (real and imaginary parts), one row per coordinate.
void write_basis_csv(std::ostream& out, const BasisPair& pair);

}  // namespace leftinv
