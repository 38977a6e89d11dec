#pragma once

#include <random>

#include "leftinv/numerics.hpp"

namespace support {

using leftinv::cd;
using leftinv::CMatrix;
using leftinv::CVector;

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cd(normal(rng), normal(rng));
  }
  return m;
}

inline CVector random_vector(std::mt19937_64& rng, Eigen::Index size) {
  return random_matrix(rng, size, 1).col(0);
}

/// Product of Gaussian factors; rank `rank` almost surely.
inline CMatrix random_rank(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index rank) {
  return random_matrix(rng, rows, rank) * random_matrix(rng, rank, cols);
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace support
