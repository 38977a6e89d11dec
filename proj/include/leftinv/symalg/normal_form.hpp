#pragma once

// Normal form of an element of the algebra generated by T and Td modulo
// Td T = I: a Laurent part in T, Td plus a finite combination of T^i P Td^j.

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "leftinv/symalg/expr.hpp"

namespace leftinv::symalg {

/// T^t P^p Td^d with p in {0, 1}.
struct Monomial {
  int t = 0;
  int p = 0;
  int d = 0;
  auto operator<=>(const Monomial&) const = default;
};

/// Words reduced by Td T = I, P T = 0, Td P = 0, P P = P.
using Polynomial = std::map<Monomial, cd>;

Polynomial multiply(const Polynomial& a, const Polynomial& b);
/// P enters as I - T Td.
Polynomial to_polynomial(const Expr& e);

struct NormalForm {
  std::map<int, cd> laurent;                      // k > 0: T^k, k < 0: Td^-k, 0: I
  std::map<std::pair<int, int>, cd> finite_rank;  // (i, j): T^i P Td^j

  bool empty() const { return laurent.empty() && finite_rank.empty(); }
  /// Longest word in the evaluated form (P counts as two factors).
  int word_length() const;
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Coefficients with |c| <= kDropCutoff * max(1, largest |c|) are removed.
inline constexpr double kDropCutoff = 1e-13;

NormalForm to_normal_form(const Polynomial& p);
Polynomial to_polynomial(const NormalForm& nf);

NormalForm normalize(const Expr& e);
NormalForm operator*(const NormalForm& a, const NormalForm& b);
NormalForm operator+(const NormalForm& a, const NormalForm& b);
NormalForm operator*(cd s, const NormalForm& a);

/// True iff the Laurent part vanishes, i.e. the element lies in the ideal
/// generated by P (the closed span of T^i P Td^j).
bool in_commutator_ideal(const NormalForm& nf);

/// D_k = sum_{j<k} T^j P Td^{k-1-j}.
NormalForm dilation_corner(int k);
/// Closed form of D_m D_n: sum_{k = max(0, m-n)}^{m-1} T^k P Td^{k+n-m}.
NormalForm dilation_corner_product(int m, int n);

/// {"laurent": {"k": [re, im]}, "finite_rank": {"i,j": [re, im]}}; empty maps
/// are omitted and integral components are written as integers.
nlohmann::ordered_json to_json(const NormalForm& nf);
NormalForm normal_form_from_json(const nlohmann::json& j);

}  // namespace leftinv::symalg
