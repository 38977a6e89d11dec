#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leftinv/families.hpp"
#include "leftinv/fredholm.hpp"
#include "support.hpp"

using namespace leftinv;

namespace {

using Laurent = std::map<int, cd>;

Laurent multiply(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) r[i + j] += x * y;
  }
  return r;
}

struct RandomSymbol {
  Laurent coeffs;
  int winding = 0;  // known from the factorization
};

/// z^m times roots inside the disc, roots outside, and factors (1 - c/z) with
/// |c| < 1; only the monomial and the inner roots contribute to the winding.
RandomSymbol random_symbol(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 2);
  auto phase = [&] { return 2.0 * M_PI * u(rng); };
  const int m = std::uniform_int_distribution<int>(-2, 1)(rng);
  const int inner = small(rng);
  RandomSymbol s;
  s.coeffs = {{m, 1.0}};
  for (int i = 0; i < inner; ++i) {
    s.coeffs = multiply(s.coeffs, {{0, -std::polar(0.7 * u(rng), phase())}, {1, 1.0}});
  }
  for (int i = small(rng); i > 0; --i) {
    s.coeffs = multiply(s.coeffs, {{0, 1.0}, {1, -1.0 / std::polar(1.5 + u(rng), phase())}});
  }
  for (int i = small(rng) / 2; i > 0; --i) {
    s.coeffs = multiply(s.coeffs, {{0, 1.0}, {-1, -std::polar(0.7 * u(rng), phase())}});
  }
  s.winding = m + inner;
  return s;
}

}  // namespace

TEST_CASE("left-invertibility certificates of the shifts") {
  const auto shift = left_invertibility_certificate(unilateral_shift(), 128);
  CHECK(shift.is_left_invertible);
  CHECK(shift.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shift.sigma_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shift.tightly_stable);

  const auto weighted = left_invertibility_certificate(builtin_family("weighted_shift").spec, 128);
  CHECK(weighted.sigma_min == doctest::Approx(2.0).epsilon(1e-12));

  const auto alternating = left_invertibility_certificate(builtin_family("alternating_shift").spec, 128);
  CHECK(alternating.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(alternating.sigma_max == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("certificate rejects estimates that move with n") {
  std::vector<cd> head(200, 1.0);
  CHECK_THROWS_WITH_AS(left_invertibility_certificate(weighted_shift(head, 0.5), 256),
                       doctest::Contains("sigma_min"), Error);
}

TEST_CASE("index of the built-in families and simple Toeplitz operators") {
  for (const auto& f : builtin_families()) {
    CAPTURE(f.name);
    CHECK(fredholm_index(f.spec, 128) == -1);
  }
  CHECK(fredholm_index(toeplitz({{0, -2.0}, {1, 1.0}}), 128) == 0);  // z - 2
  CHECK(fredholm_index(toeplitz({{2, 1.0}}), 128) == -2);
  CHECK(fredholm_index(toeplitz({{-1, 1.0}}), 128) == 1);
  CHECK(fredholm_index(block2x2(unilateral_shift(), nullptr, nullptr, unilateral_shift()), 128) == -2);
}

TEST_CASE("winding numbers of monomials and of the exponential symbol") {
  for (int k = -4; k <= 4; ++k) {
    if (k == 0) continue;
    CHECK(winding_number(Laurent{{k, 1.0}}) == k);
  }
  CHECK(winding_number(Laurent{{0, 3.0}, {1, 1.0}}) == 0);
  CHECK(winding_number(exp_symbol) == 1);
}

TEST_CASE("index equals minus the winding number on random symbols") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomSymbol s = random_symbol(rng);
    CAPTURE(trial);
    CAPTURE(s.winding);
    CHECK(winding_number(s.coeffs) == s.winding);
    CHECK(fredholm_index(toeplitz(s.coeffs), 128) == -s.winding);
  }
}

TEST_CASE("Taylor coefficients of exp(s (z^2 - z))") {
  const cd scale(0.0, M_PI / 2);
  const std::vector<cd> coeffs = exp_quadratic_taylor(scale);
  // Cauchy product of exp(s z^2) and exp(-s z).
  auto direct = [&](int k) {
    cd sum = 0.0;
    for (int i = 0; 2 * i <= k; ++i) {
      const int j = k - 2 * i;
      sum += std::pow(scale, i) / std::tgamma(i + 1.0) * std::pow(-scale, j) / std::tgamma(j + 1.0);
    }
    return sum;
  };
  REQUIRE(coeffs.size() > 20);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    CAPTURE(k);
    CHECK(std::abs(coeffs[k] - direct(static_cast<int>(k))) < 1e-13);
  }
  CHECK(std::abs(coeffs.back()) >= 1e-14);
  CHECK(std::abs(direct(static_cast<int>(coeffs.size()) + 1)) < 1e-14);
}

TEST_CASE("winding number errors") {
  try {
    winding_number(Laurent{{0, -1.0}, {1, 1.0}});
    FAIL("expected SymbolVanishes");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SymbolVanishes);
  }
  try {
    winding_number(Laurent{{1, 1.0}}, 4);
    FAIL("expected BadGrid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadGrid);
  }
}
