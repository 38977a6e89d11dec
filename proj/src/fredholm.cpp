#include "leftinv/fredholm.hpp"

#include <cmath>
#include <numbers>

namespace leftinv {

LeftInvertibilityCertificate left_invertibility_certificate(const SpecPtr& spec, Index n,
                                                            RankTolerance tol,
                                                            StabilityPolicy policy) {
  if (n < 2) throw Error(ErrorKind::SpecInvalid, "certificate needs n >= 2");
  const RealVector full = singular_values(truncate(spec, n).matrix);
  const RealVector half = singular_values(truncate(spec, n / 2).matrix);

  LeftInvertibilityCertificate cert;
  cert.n = n;
  cert.sigma_max = full(0);
  cert.sigma_min = full(full.size() - 1);
  cert.sigma_min_half = half(half.size() - 1);
  const double gap = std::abs(cert.sigma_min - cert.sigma_min_half);
  if (gap > policy.agree) {
    throw Error(ErrorKind::Unstable, "sigma_min estimates at n = " + std::to_string(n) + " and " +
                                         std::to_string(n / 2) + " differ by " + std::to_string(gap));
  }
  cert.tightly_stable = gap < policy.tight;
  cert.is_left_invertible = cert.sigma_min > tol.relative_cutoff * cert.sigma_max;
  return cert;
}

int truncated_index(const CMatrix& t, Index window, RankTolerance tol) {
  const auto f = svd_factor(t);
  const Index rank = numerical_rank(f.singular_values, tol);
  const Index kernel_dim = t.cols() - rank;

  window = std::min(window, t.rows());
  const CMatrix leading = f.left_vectors.topLeftCorner(window, rank);
  const RealVector s = singular_values(leading);
  // Eigenvalues of the compressed cokernel projection are 1 - s_i^2, plus
  // ones for the directions the range basis does not reach.
  Index coker_dim = window - std::min(window, rank);
  for (Index i = 0; i < s.size(); ++i) {
    const double ev = 1.0 - s(i) * s(i);
    if (ev > 0.1 && ev < 0.9) {
      throw Error(ErrorKind::Unstable, "cokernel projection not separated on the leading window "
                                       "(eigenvalue " + std::to_string(ev) + ")");
    }
    if (ev >= 0.9) ++coker_dim;
  }
  return static_cast<int>(kernel_dim - coker_dim);
}

int fredholm_index(const SpecPtr& spec, Index n, RankTolerance tol) {
  if (n < 4) throw Error(ErrorKind::SpecInvalid, "index estimate needs n >= 4");
  const int at_n = truncated_index(truncate(spec, n).matrix, n / 2, tol);
  const int at_2n = truncated_index(truncate(spec, 2 * n).matrix, n, tol);
  if (at_n != at_2n) {
    throw Error(ErrorKind::Unstable, "index estimates disagree across sizes: " +
                                         std::to_string(at_n) + " vs " + std::to_string(at_2n));
  }
  if (const auto* sym = std::get_if<OperatorSpec::ToeplitzSymbol>(&spec->variant())) {
    const int wind = winding_number(sym->laurent_coeffs);
    if (at_n != -wind) {
      throw Error(ErrorKind::CrossCheckFailed, "kernel count gives " + std::to_string(at_n) +
                                                   " but the winding number is " +
                                                   std::to_string(wind));
    }
  }
  return at_n;
}

cd evaluate_laurent(const std::map<int, cd>& laurent_coeffs, cd z) {
  cd sum = 0.0;
  for (const auto& [k, c] : laurent_coeffs) sum += c * std::pow(z, k);
  return sum;
}

int winding_number(const std::map<int, cd>& laurent_coeffs, int grid_points) {
  return winding_number([&](cd z) { return evaluate_laurent(laurent_coeffs, z); }, grid_points);
}

int winding_number(const std::function<cd(cd)>& symbol, int grid_points) {
  if (grid_points < 8) throw Error(ErrorKind::BadGrid, "winding number needs at least 8 points");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<cd> values(static_cast<std::size_t>(grid_points));
  double min_modulus = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_points; ++k) {
    values[static_cast<std::size_t>(k)] = symbol(std::polar(1.0, two_pi * k / grid_points));
    min_modulus = std::min(min_modulus, std::abs(values[static_cast<std::size_t>(k)]));
  }
  if (!(min_modulus > 1e-6)) {
    throw Error(ErrorKind::SymbolVanishes,
                "symbol modulus drops to " + std::to_string(min_modulus) + " on the circle");
  }
  double total = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const cd a = values[static_cast<std::size_t>(k)];
    const cd b = values[static_cast<std::size_t>((k + 1) % grid_points)];
    total += std::arg(b / a);
  }
  const double turns = total / two_pi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.01) {
    throw Error(ErrorKind::Unstable, "winding estimate " + std::to_string(turns) +
                                         " is not near an integer; refine the grid");
  }
  return static_cast<int>(rounded);
}

std::vector<cd> exp_quadratic_taylor(cd scale, double cutoff) {
  // f' = scale (2z - 1) f  =>  (k + 1) a_{k+1} = scale (2 a_{k-1} - a_k)
  constexpr int max_terms = 400;
  std::vector<cd> a{cd(1.0)};
  for (int k = 0; k + 1 < max_terms; ++k) {
    const cd prev = k >= 1 ? a[static_cast<std::size_t>(k - 1)] : cd(0.0);
    a.push_back(scale * (2.0 * prev - a[static_cast<std::size_t>(k)]) / double(k + 1));
  }
  std::size_t last = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k]) >= cutoff) last = k;
  }
  a.resize(last + 1);
  return a;
}

}  // namespace leftinv
