#include "leftinv/spec_io.hpp"

#include <cmath>
#include <fstream>

namespace leftinv {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::SpecInvalid, msg); }

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) invalid(std::string("missing field '") + name + "'");
  return j.at(name);
}

cd complex_from(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  invalid("expected a number or [re, im], got " + v.dump());
}

ojson number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return static_cast<std::int64_t>(v);
  return v;
}

ojson complex_to(cd c) { return ojson::array({number(c.real()), number(c.imag())}); }

CVector vector_from(const json& v) {
  if (!v.is_array() || v.empty()) invalid("expected a non-empty array of complex entries");
  CVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = complex_from(v[i]);
  return out;
}

ojson vector_to(const CVector& v) {
  ojson out = ojson::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to(v(i)));
  return out;
}

SpecPtr child_from(const json& v) { return v.is_null() ? nullptr : spec_from_json(v); }

ojson child_to(const SpecPtr& s) { return s ? spec_to_json(*s) : ojson(nullptr); }

}  // namespace

SpecPtr spec_from_json(const json& j) {
  if (!j.is_object()) invalid("operator spec must be a JSON object");
  const json& type_field = field(j, "type");
  if (!type_field.is_string()) invalid("'type' must be a string");
  const std::string type = type_field.get<std::string>();

  if (type == "weighted_shift") {
    std::vector<cd> head;
    if (j.contains("head_weights")) {
      const json& h = j.at("head_weights");
      if (!h.is_array()) invalid("'head_weights' must be an array");
      for (const auto& w : h) head.push_back(complex_from(w));
    }
    return weighted_shift(std::move(head), complex_from(field(j, "tail_weight")));
  }
  if (type == "toeplitz_symbol") {
    const json& c = field(j, "laurent_coeffs");
    if (!c.is_object()) invalid("'laurent_coeffs' must map integer keys to [re, im]");
    std::map<int, cd> coeffs;
    for (const auto& [key, value] : c.items()) {
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != key.size()) invalid("bad Laurent index '" + key + "'");
      coeffs[k] = complex_from(value);
    }
    std::optional<int> degree;
    if (j.contains("truncation_degree") && !j.at("truncation_degree").is_null()) {
      if (!j.at("truncation_degree").is_number_integer()) invalid("'truncation_degree' must be an integer");
      degree = j.at("truncation_degree").get<int>();
    }
    return toeplitz(std::move(coeffs), degree);
  }
  if (type == "bilateral_shift") return bilateral_shift();
  if (type == "inclusion_nat_to_int") return inclusion_nat_to_int();
  if (type == "failed_wold_composite") return failed_wold_composite();
  if (type == "block2x2") {
    return block2x2(child_from(field(j, "a")), child_from(field(j, "b")), child_from(field(j, "c")),
                    child_from(field(j, "d")));
  }
  if (type == "finite_rank_perturbation") {
    const json& terms = field(j, "terms");
    if (!terms.is_array()) invalid("'terms' must be an array");
    std::vector<OperatorSpec::RankOneTerm> out;
    for (const auto& t : terms) {
      if (!t.is_object()) invalid("each term must be an object {u, v}");
      out.push_back({vector_from(field(t, "u")), vector_from(field(t, "v"))});
    }
    return finite_rank_perturbation(spec_from_json(field(j, "base")), std::move(out));
  }
  if (type == "scalar_shift_of") {
    return scalar_shift_of(spec_from_json(field(j, "base")), complex_from(field(j, "lambda")));
  }
  invalid("unknown operator type '" + type + "'");
}

ojson spec_to_json(const OperatorSpec& spec) {
  ojson out = ojson::object();
  out["type"] = spec.type_name();
  std::visit(
      overloaded{
          [&](const OperatorSpec::WeightedShift& w) {
            ojson head = ojson::array();
            for (cd c : w.head_weights) head.push_back(complex_to(c));
            out["head_weights"] = std::move(head);
            out["tail_weight"] = complex_to(w.tail_weight);
          },
          [&](const OperatorSpec::ToeplitzSymbol& t) {
            ojson c = ojson::object();
            for (const auto& [k, v] : t.laurent_coeffs) c[std::to_string(k)] = complex_to(v);
            out["laurent_coeffs"] = std::move(c);
            if (t.truncation_degree) out["truncation_degree"] = *t.truncation_degree;
          },
          [&](const OperatorSpec::Block2x2& b) {
            out["a"] = child_to(b.a);
            out["b"] = child_to(b.b);
            out["c"] = child_to(b.c);
            out["d"] = child_to(b.d);
          },
          [&](const OperatorSpec::FiniteRankPerturbation& f) {
            out["base"] = spec_to_json(*f.base);
            ojson terms = ojson::array();
            for (const auto& t : f.terms) {
              ojson term = ojson::object();
              term["u"] = vector_to(t.u);
              term["v"] = vector_to(t.v);
              terms.push_back(std::move(term));
            }
            out["terms"] = std::move(terms);
          },
          [&](const OperatorSpec::ScalarShiftOf& s) {
            out["base"] = spec_to_json(*s.base);
            out["lambda"] = complex_to(s.lambda);
          },
          [](const auto&) {},
      },
      spec.variant());
  return out;
}

SpecPtr load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open spec file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid("malformed JSON in " + path.string() + ": " + e.what());
  }
  return spec_from_json(j);
}

void save_spec(const std::filesystem::path& path, const OperatorSpec& spec) {
  std::ofstream out(path);
  if (!out) invalid("cannot write " + path.string());
  out << spec_to_json(spec).dump(2) << '\n';
}

}  // namespace leftinv
