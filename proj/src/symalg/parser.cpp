#include "leftinv/symalg/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "leftinv/error.hpp"

namespace leftinv::symalg {

std::string_view atom_name(Atom a) {
  switch (a) {
    case Atom::T: return "T";
    case Atom::D: return "Td";
    case Atom::P: return "P";
    case Atom::I: return "I";
  }
  return "I";
}

Factor Factor::of(Expr e) { return {Atom::I, 1, std::make_shared<const Expr>(std::move(e))}; }

bool operator==(const Factor& a, const Factor& b) {
  if (a.is_group() != b.is_group()) return false;
  if (a.is_group()) return *a.group == *b.group;
  return a.atom == b.atom && a.power == b.power;
}

bool operator==(const Term& a, const Term& b) {
  return a.scalar == b.scalar && a.factors == b.factors;
}

bool operator==(const Expr& a, const Expr& b) { return a.terms == b.terms; }

int Expr::word_length() const {
  int best = 0;
  for (const Term& t : terms) {
    int len = 0;
    for (const Factor& f : t.factors) {
      if (f.is_group()) {
        len += f.group->word_length();
      } else {
        len += (f.atom == Atom::P ? 2 : 1) * f.power;
      }
    }
    best = std::max(best, len);
  }
  return best;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip();
    if (pos_ == text_.size()) throw Error(ErrorKind::EmptyInput, "expression is empty");
    Expr e = parse_expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool at_factor_start() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 'T' || c == 'P' || c == 'I' || c == '(';
  }

  Expr parse_expr() {
    Expr e;
    double sign = 1.0;
    if (accept('-')) {
      sign = -1.0;
    } else {
      accept('+');
    }
    e.terms.push_back(parse_term(sign));
    while (true) {
      if (accept('+')) {
        e.terms.push_back(parse_term(1.0));
      } else if (accept('-')) {
        e.terms.push_back(parse_term(-1.0));
      } else {
        break;
      }
    }
    return e;
  }

  Term parse_term(double sign) {
    Term t;
    t.scalar = sign;
    skip();
    if (auto s = try_scalar()) {
      if (!accept('*')) fail("expected '*' after scalar");
      t.scalar *= *s;
    }
    if (!at_factor_start()) fail("expected T, Td, P, I or '('");
    while (at_factor_start()) t.factors.push_back(parse_factor());
    return t;
  }

  Factor parse_factor() {
    skip();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      if (peek('^')) fail("'^' applies only to T, Td, P and I");
      return Factor::of(std::move(inner));
    }
    Atom atom = Atom::I;
    ++pos_;
    if (c == 'T') {
      atom = Atom::T;
      if (pos_ < text_.size() && text_[pos_] == 'd') {
        atom = Atom::D;
        ++pos_;
      }
    } else if (c == 'P') {
      atom = Atom::P;
    }
    int power = 1;
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a positive integer after '^'");
      const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, power);
      if (res.ec != std::errc() || power < 1) {
        pos_ = start;
        fail("power must be a positive integer");
      }
    }
    return Factor::of(atom, power);
  }

  /// Scalar at the cursor, or nothing (cursor unchanged) if there is none.
  std::optional<cd> try_scalar() {
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip();
      const auto re = try_decimal(true);
      if (re && accept(',')) {
        skip();
        const auto im = try_decimal(true);
        if (!im) fail("expected imaginary part");
        if (!accept(')')) fail("expected ')' after complex scalar");
        return cd(*re, *im);
      }
      pos_ = start;
      return std::nullopt;
    }
    if (auto d = try_decimal(false)) return cd(*d);
    return std::nullopt;
  }

  std::optional<double> try_decimal(bool allow_sign) {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (allow_sign && p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    const std::size_t digits_start = p;
    while (p < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '.')) ++p;
    if (p == digits_start) return std::nullopt;
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '-' || text_[q] == '+')) ++q;
      if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
        p = q;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      }
    }
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    double value = 0.0;
    const auto res = std::from_chars(first, text_.data() + p, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + p || !std::isfinite(value)) {
      fail("malformed number");
    }
    pos_ = p;
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_expr(std::string& out, const Expr& e);

void print_factor(std::string& out, const Factor& f) {
  if (f.is_group()) {
    out += '(';
    print_expr(out, *f.group);
    out += ')';
    return;
  }
  out += atom_name(f.atom);
  if (f.power != 1) out += "^" + std::to_string(f.power);
}

void print_expr(std::string& out, const Expr& e) {
  for (std::size_t k = 0; k < e.terms.size(); ++k) {
    const Term& t = e.terms[k];
    cd s = t.scalar;
    const bool negative = s.imag() == 0.0 && std::signbit(s.real());
    if (negative) s = -s;
    if (k == 0) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (s.imag() != 0.0) {
      out += "(" + format_real(s.real()) + "," + format_real(s.imag()) + ")*";
    } else if (s.real() != 1.0) {
      out += format_real(s.real()) + "*";
    }
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (i) out += ' ';
      print_factor(out, t.factors[i]);
    }
  }
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& e) {
  std::string out;
  print_expr(out, e);
  return out;
}

Expr sum(const Expr& a, const Expr& b, cd b_scale) {
  Expr out = a;
  for (Term t : b.terms) {
    t.scalar *= b_scale;
    out.terms.push_back(std::move(t));
  }
  return out;
}

Expr product(const Expr& a, const Expr& b) {
  return Expr{{Term{1.0, {Factor::of(a), Factor::of(b)}}}};
}

namespace {

Term random_term(std::mt19937_64& rng, int budget);

Expr random_sum(std::mt19937_64& rng, int budget) {
  std::uniform_int_distribution<int> count(1, 3);
  Expr e;
  const int terms = count(rng);
  for (int k = 0; k < terms; ++k) e.terms.push_back(random_term(rng, budget));
  return e;
}

Term random_term(std::mt19937_64& rng, int budget) {
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> pick(0, 9);
  Term t;
  switch (pick(rng) % 4) {
    case 0: t.scalar = 1.0; break;
    case 1: t.scalar = cd(small(rng), small(rng)); break;
    default: t.scalar = small(rng); break;
  }
  if (t.scalar == cd(0.0)) t.scalar = 1.0;
  int used = 0;
  while (used < budget) {
    const int left = budget - used;
    const int roll = pick(rng);
    if (roll < 2 && left >= 2) {
      std::uniform_int_distribution<int> inner(1, std::min(left, 3));
      Expr g = random_sum(rng, inner(rng));
      used += g.word_length();
      t.factors.push_back(Factor::of(std::move(g)));
    } else if (roll < 3 && left >= 2) {
      t.factors.push_back(Factor::of(Atom::P));
      used += 2;
    } else {
      std::uniform_int_distribution<int> power(1, std::min(left, 2));
      const Atom a = roll < 6 ? Atom::T : roll < 9 ? Atom::D : Atom::I;
      const int p = power(rng);
      t.factors.push_back(Factor::of(a, p));
      used += p;
    }
    if (pick(rng) < 3) break;
  }
  return t;
}

}  // namespace

Expr random_expr(std::mt19937_64& rng, int max_length) {
  if (max_length < 1) max_length = 1;
  return random_sum(rng, max_length);
}

}  // namespace leftinv::symalg
