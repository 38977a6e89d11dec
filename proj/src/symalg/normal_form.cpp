#include "leftinv/symalg/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "leftinv/error.hpp"

namespace leftinv::symalg {
namespace {

void add(Polynomial& p, const Monomial& m, cd c) {
  if (c == cd(0.0)) return;
  p[m] += c;
}

/// Product of two reduced monomials; nullopt when it vanishes.
std::optional<Monomial> multiply(const Monomial& x, const Monomial& y) {
  // Td^b T^c collapses to T^(c-b) or Td^(b-c).
  const int up = std::max(0, y.t - x.d);
  const int down = std::max(0, x.d - y.t);
  if (x.p && y.p) {
    if (up || down) return std::nullopt;  // P T^k P = P Td^k P = 0 for k > 0
    return Monomial{x.t, 1, y.d};
  }
  if (x.p) {
    if (up) return std::nullopt;  // P T = 0
    return Monomial{x.t, 1, down + y.d};
  }
  if (y.p) {
    if (down) return std::nullopt;  // Td P = 0
    return Monomial{x.t + up, 1, y.d};
  }
  return Monomial{x.t + up, 0, down + y.d};
}

Polynomial single(Monomial m) { return {{m, cd(1.0)}}; }

Polynomial atom_polynomial(Atom a) {
  switch (a) {
    case Atom::T: return single({1, 0, 0});
    case Atom::D: return single({0, 0, 1});
    case Atom::I: return single({0, 0, 0});
    case Atom::P: return {{{0, 0, 0}, cd(1.0)}, {{1, 0, 1}, cd(-1.0)}};
  }
  return {};
}

Polynomial factor_polynomial(const Factor& f) {
  if (f.is_group()) return to_polynomial(*f.group);
  const Polynomial base = atom_polynomial(f.atom);
  Polynomial out = base;
  for (int k = 1; k < f.power; ++k) out = multiply(out, base);
  return out;
}

std::string real_key(int k) { return std::to_string(k); }

nlohmann::ordered_json number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return static_cast<std::int64_t>(v);
  return v;
}

cd parse_pair(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorKind::SpecInvalid, "coefficient must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::SpecInvalid, "bad key '" + s + "'");
  return v;
}

}  // namespace

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [x, cx] : a) {
    for (const auto& [y, cy] : b) {
      if (const auto m = multiply(x, y)) add(out, *m, cx * cy);
    }
  }
  return out;
}

Polynomial to_polynomial(const Expr& e) {
  Polynomial out;
  for (const Term& t : e.terms) {
    Polynomial prod = single({0, 0, 0});
    for (const Factor& f : t.factors) prod = multiply(prod, factor_polynomial(f));
    for (const auto& [m, c] : prod) add(out, m, t.scalar * c);
  }
  return out;
}

int NormalForm::word_length() const {
  int len = 0;
  for (const auto& [k, c] : laurent) len = std::max(len, std::abs(k));
  for (const auto& [ij, c] : finite_rank) len = std::max(len, ij.first + ij.second + 2);
  return len;
}

NormalForm to_normal_form(const Polynomial& p) {
  NormalForm nf;
  for (const auto& [m, c] : p) {
    if (m.p) {
      nf.finite_rank[{m.t, m.d}] += c;
      continue;
    }
    // T^a Td^b = T^(a-b) - sum_{k = max(0, a-b)}^{a-1} T^k P Td^(k+b-a)
    nf.laurent[m.t - m.d] += c;
    for (int k = std::max(0, m.t - m.d); k < m.t; ++k) nf.finite_rank[{k, k + m.d - m.t}] -= c;
  }
  double scale = 1.0;
  for (const auto& [k, c] : nf.laurent) scale = std::max(scale, std::abs(c));
  for (const auto& [k, c] : nf.finite_rank) scale = std::max(scale, std::abs(c));
  const double cutoff = kDropCutoff * scale;
  std::erase_if(nf.laurent, [&](const auto& kv) { return std::abs(kv.second) <= cutoff; });
  std::erase_if(nf.finite_rank, [&](const auto& kv) { return std::abs(kv.second) <= cutoff; });
  return nf;
}

Polynomial to_polynomial(const NormalForm& nf) {
  Polynomial out;
  for (const auto& [k, c] : nf.laurent) {
    add(out, k >= 0 ? Monomial{k, 0, 0} : Monomial{0, 0, -k}, c);
  }
  for (const auto& [ij, c] : nf.finite_rank) add(out, {ij.first, 1, ij.second}, c);
  return out;
}

NormalForm normalize(const Expr& e) { return to_normal_form(to_polynomial(e)); }

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  return to_normal_form(multiply(to_polynomial(a), to_polynomial(b)));
}

NormalForm operator+(const NormalForm& a, const NormalForm& b) {
  Polynomial p = to_polynomial(a);
  for (const auto& [m, c] : to_polynomial(b)) p[m] += c;
  return to_normal_form(p);
}

NormalForm operator*(cd s, const NormalForm& a) {
  Polynomial p = to_polynomial(a);
  for (auto& [m, c] : p) c *= s;
  return to_normal_form(p);
}

bool in_commutator_ideal(const NormalForm& nf) { return nf.laurent.empty(); }

NormalForm dilation_corner(int k) {
  NormalForm nf;
  for (int j = 0; j < k; ++j) nf.finite_rank[{j, k - 1 - j}] = 1.0;
  return nf;
}

NormalForm dilation_corner_product(int m, int n) {
  NormalForm nf;
  for (int k = std::max(0, m - n); k < m; ++k) nf.finite_rank[{k, k + n - m}] = 1.0;
  return nf;
}

nlohmann::ordered_json to_json(const NormalForm& nf) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  auto pair = [](cd c) {
    return nlohmann::ordered_json::array({number(c.real()), number(c.imag())});
  };
  if (!nf.laurent.empty()) {
    nlohmann::ordered_json l = nlohmann::ordered_json::object();
    for (const auto& [k, c] : nf.laurent) l[real_key(k)] = pair(c);
    out["laurent"] = std::move(l);
  }
  if (!nf.finite_rank.empty()) {
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    for (const auto& [ij, c] : nf.finite_rank) {
      f[std::to_string(ij.first) + "," + std::to_string(ij.second)] = pair(c);
    }
    out["finite_rank"] = std::move(f);
  }
  return out;
}

NormalForm normal_form_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::SpecInvalid, "normal form must be a JSON object");
  NormalForm nf;
  for (const auto& [key, value] : j.items()) {
    if (key == "laurent") {
      for (const auto& [k, c] : value.items()) nf.laurent[parse_int(k)] = parse_pair(c);
    } else if (key == "finite_rank") {
      for (const auto& [k, c] : value.items()) {
        const auto comma = k.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::SpecInvalid, "bad key '" + k + "'");
        const int i = parse_int(k.substr(0, comma));
        const int jj = parse_int(k.substr(comma + 1));
        if (i < 0 || jj < 0) throw Error(ErrorKind::SpecInvalid, "negative finite-rank index");
        nf.finite_rank[{i, jj}] = parse_pair(c);
      }
    } else {
      throw Error(ErrorKind::SpecInvalid, "unknown normal form key '" + key + "'");
    }
  }
  return nf;
}

}  // namespace leftinv::symalg
