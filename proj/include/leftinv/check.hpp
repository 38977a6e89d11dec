#pragma once

#include <string>

namespace leftinv {

/// One verified quantity: pass means value <= bound unless stated otherwise.
struct CheckRecord {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

inline CheckRecord at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value <= bound};
}

inline CheckRecord at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value >= bound};
}

inline CheckRecord holds(std::string name, bool ok) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, ok};
}

}  // namespace leftinv
