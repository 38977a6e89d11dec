#pragma once

// Built-in operator families used by the verification suites.

#include <string>
#include <vector>

#include "leftinv/operator_spec.hpp"

namespace leftinv {

struct Family {
  std::string name;
  SpecPtr spec;
  /// Index -1 and analytic, so the basis and section machinery applies.
  bool analytic_index_one = true;
};

/// unilateral_shift, weighted_shift (tail 2), alternating_shift (weights
/// 1, 2, 1, 2, ...), perturbed_shift (shift + 0.1 theta_{e0, e2}),
/// toeplitz_exp (symbol z exp(i pi / 2 (z^2 - z))), failed_wold.
const std::vector<Family>& builtin_families();

/// Throws SpecInvalid for an unknown name.
const Family& builtin_family(const std::string& name);

/// Symbol of toeplitz_exp evaluated pointwise (no series truncation).
cd exp_symbol(cd z);

}  // namespace leftinv
