#pragma once

// Expressions in T, Td (the Moore-Penrose inverse), P = I - T Td and I.
//
//   expr   := term (('+' | '-') term)*        a leading sign is also accepted
//   term   := [scalar '*'] factor+
//   factor := ('T' | 'Td' | 'P' | 'I') ['^' int] | '(' expr ')'
//   scalar := decimal | '(' decimal ',' decimal ')'

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace leftinv::symalg {

using cd = std::complex<double>;

enum class Atom { T, D, P, I };
std::string_view atom_name(Atom a);

struct Expr;

struct Factor {
  Atom atom = Atom::I;
  int power = 1;
  std::shared_ptr<const Expr> group;  // set for a parenthesised sub-expression

  bool is_group() const { return group != nullptr; }
  static Factor of(Atom a, int power = 1) { return {a, power, nullptr}; }
  static Factor of(Expr e);
};

struct Term {
  cd scalar = 1.0;
  std::vector<Factor> factors;
};

struct Expr {
  std::vector<Term> terms;

  /// Longest product of atoms along any term, counting powers; P counts twice
  /// (it is evaluated as I - T Td).
  int word_length() const;
};

bool operator==(const Factor& a, const Factor& b);
bool operator==(const Term& a, const Term& b);
bool operator==(const Expr& a, const Expr& b);

/// Throws SyntaxError (with column) or Error(EmptyInput).
Expr parse(std::string_view text);

/// Canonical text; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

Expr sum(const Expr& a, const Expr& b, cd b_scale = 1.0);
Expr product(const Expr& a, const Expr& b);

/// Random expression whose word_length() is at most `max_length`, with small
/// integer or Gaussian-integer scalars.
Expr random_expr(std::mt19937_64& rng, int max_length);

}  // namespace leftinv::symalg
