#include "leftinv/families.hpp"

#include <numbers>

#include "leftinv/fredholm.hpp"

namespace leftinv {
namespace {

constexpr cd kQuarterTurn{0.0, std::numbers::pi / 2.0};
constexpr std::size_t kAlternatingHead = 1024;

SpecPtr alternating_shift() {
  std::vector<cd> head(kAlternatingHead);
  for (std::size_t k = 0; k < head.size(); ++k) head[k] = k % 2 == 0 ? 1.0 : 2.0;
  return weighted_shift(std::move(head), 1.0);
}

SpecPtr perturbed_shift() {
  OperatorSpec::RankOneTerm term{CVector::Unit(1, 0) * 0.1, CVector::Unit(3, 2)};
  return finite_rank_perturbation(unilateral_shift(), {term});
}

SpecPtr toeplitz_exp() {
  const auto taylor = exp_quadratic_taylor(kQuarterTurn);
  std::map<int, cd> coeffs;
  for (std::size_t k = 0; k < taylor.size(); ++k) coeffs[static_cast<int>(k) + 1] = taylor[k];
  return toeplitz(std::move(coeffs), static_cast<int>(taylor.size()));
}

}  // namespace

cd exp_symbol(cd z) { return z * std::exp(kQuarterTurn * (z * z - z)); }

const std::vector<Family>& builtin_families() {
  static const std::vector<Family> families{
      {"unilateral_shift", unilateral_shift(), true},
      {"weighted_shift", weighted_shift({}, 2.0), true},
      {"alternating_shift", alternating_shift(), true},
      {"perturbed_shift", perturbed_shift(), true},
      {"toeplitz_exp", toeplitz_exp(), true},
      {"failed_wold", failed_wold_composite(), false},
  };
  return families;
}

const Family& builtin_family(const std::string& name) {
  for (const auto& f : builtin_families()) {
    if (f.name == name) return f;
  }
  throw Error(ErrorKind::SpecInvalid, "unknown built-in family '" + name + "'");
}

}  // namespace leftinv
