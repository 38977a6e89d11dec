#pragma once

// Left-invertibility certificates, Fredholm index and symbol winding numbers.

#include <functional>
#include <map>
#include <vector>

#include "leftinv/operator_spec.hpp"

namespace leftinv {

/// Agreement thresholds for estimates taken at two truncation sizes.
struct StabilityPolicy {
  double agree = 1e-3;  // beyond this the estimate is rejected as Unstable
  double tight = 1e-6;  // below this the estimate is flagged as tightly stable
};

struct LeftInvertibilityCertificate {
  Index n = 0;
  double sigma_min = 0.0;
  double sigma_min_half = 0.0;  // same estimate at size n / 2
  double sigma_max = 0.0;
  bool is_left_invertible = false;
  bool tightly_stable = false;
};

/// sigma_min of the guarded truncation at sizes n and n / 2.
/// Throws Unstable when the two differ by more than policy.agree.
LeftInvertibilityCertificate left_invertibility_certificate(const SpecPtr& spec, Index n,
                                                            RankTolerance tol = {},
                                                            StabilityPolicy policy = {});

/// dim ker - dim coker of a guarded truncation `t` ((cols + guard) x cols).
/// The cokernel is counted through the orthogonal projection onto ran(t)^perp
/// compressed to the leading `window` coordinates, which separates genuine
/// cokernel directions from the artificial ones living at the truncation edge.
/// Throws Unstable if the compressed projection has eigenvalues in (0.1, 0.9).
int truncated_index(const CMatrix& t, Index window, RankTolerance tol = {});

/// Fredholm index from sizes n and 2n; for Toeplitz specs also compared
/// against minus the winding number of the symbol.
int fredholm_index(const SpecPtr& spec, Index n, RankTolerance tol = {});

/// Winding number of a Laurent polynomial around 0 along the unit circle.
int winding_number(const std::map<int, cd>& laurent_coeffs, int grid_points = 4096);
/// Same for a symbol given pointwise.
int winding_number(const std::function<cd(cd)>& symbol, int grid_points = 4096);

cd evaluate_laurent(const std::map<int, cd>& laurent_coeffs, cd z);

/// Taylor coefficients of exp(scale * (z^2 - z)), cut after the last
/// coefficient of modulus >= cutoff.
std::vector<cd> exp_quadratic_taylor(cd scale, double cutoff = 1e-14);

}  // namespace leftinv
