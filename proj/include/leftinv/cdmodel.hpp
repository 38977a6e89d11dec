#pragma once

// Analytic model of a left-invertible operator on the disc |z| < 1/||T^dagger||:
// eigenvector sections of T*, the reproducing kernel and the hat transform.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <vector>

#include "leftinv/basis.hpp"

namespace leftinv {

struct DiscParams {
  double radius = 0.0;       // 1 / ||T^dagger||
  double safety = 0.9;
  double dagger_norm = 0.0;
  double max_modulus() const { return safety * radius; }
};

/// Radius from the stabilized sigma_min (Unstable if the two sizes disagree).
DiscParams omega_radius(const SpecPtr& spec, Index n);

/// `points` samples split evenly over the circles 0.5 r and 0.8 r.
std::vector<cd> default_grid(const DiscParams& disc, int points = 64);

struct Section {
  cd lambda;
  int terms = 0;             // J: gamma = sum_{j <= J} lambda^j x'_j
  CVector gamma;
  CVector resolvent_gamma;   // (I - lambda T')^{-1} x0 on the truncation
  double tail_bound = 0.0;   // (|lambda| ||T^dagger||)^{J+1} / (1 - |lambda| ||T^dagger||) ||x0||
};

struct SectionSample {
  std::vector<cd> lambdas;
  std::vector<CVector> gammas;
  std::vector<double> tail_bounds;
  std::vector<int> series_terms;
};

struct KernelMatrix {
  std::vector<cd> grid;
  CMatrix values;  // values(a, b) = K(grid[a], grid[b])
  double hermitian_defect() const;
  double min_eigenvalue() const;
};

struct IntertwiningResult {
  double shift_deviation = 0.0;     // max |(T f)^ - lambda f^|
  double division_deviation = 0.0;  // max |(T^dagger f)^ - (f^ - <f, x0>) / lambda|
};

struct CombinedRank {
  Index window_dim = 0;  // 2 W
  Index gram_rank_single = 0;
  Index gram_rank_combined = 0;
  bool spans() const { return gram_rank_combined == window_dim; }
};

/// Sections, kernel and transforms for one operator at one truncation size.
/// The dual orbit x'_j is extended on demand and shared between calls.
class SectionModel {
 public:
  SectionModel(const SpecPtr& spec, Index n,
               const LeftInverseChoice& choice = LeftInverseChoice::dagger());

  const DiscParams& disc() const { return disc_; }
  const MpPackage& package() const { return pkg_; }
  const CVector& x0() const { return x0_; }
  double operator_norm() const { return pkg_.certificate.sigma_max; }

  /// Smallest J whose tail bound at |lambda| is below `target`.
  int terms_for(cd lambda, double target = 1e-10) const;

  /// OutsideDisc if |lambda| exceeds the safety radius.
  Section section(cd lambda) const;
  Section section(cd lambda, int terms) const;
  SectionSample sample(const std::vector<cd>& grid) const;

  /// ||T* gamma - lambda gamma|| / ||gamma||.
  double eigen_residual(const Section& s) const;
  /// tail_bound (||T|| + |lambda|) / ||gamma|| + 1e-8.
  double eigen_residual_bound(const Section& s) const;

  KernelMatrix kernel(const std::vector<cd>& grid) const;
  /// f^(lambda) = <f, gamma(conj lambda)>.
  std::vector<cd> hat_transform(const CVector& f, const std::vector<cd>& grid) const;
  IntertwiningResult intertwining_check(const std::vector<cd>& grid, int trials,
                                        std::uint64_t seed) const;

  /// x'_j, computed on first use.
  CVector dual_vector(int j) const;
  /// T^j x0, exact.
  CVector basis_vector(int j) const;

 private:
  void require_inside(cd lambda) const;

  SpecPtr spec_;
  MpPackage pkg_;
  DiscParams disc_;
  CVector x0_;
  CMatrix dual_op_;  // L* on the first n coordinates
  mutable std::mutex mutex_;
  mutable std::vector<CVector> dual_;
};

/// For spec = a (+) d (block diagonal), the section
/// lambda -> gamma_a(conj lambda) (+) phi2(lambda) gamma_d(conj lambda),
/// restricted to the first `window` coordinates of each summand, and the
/// rank of its samples against that of gamma_a alone. BadGrid if the grid
/// has fewer than 2 * window points.
CombinedRank combine_sections(const SpecPtr& spec_direct_sum, const std::vector<cd>& phi2,
                              const std::vector<cd>& grid, Index n, Index window = 6,
                              RankTolerance tol = {});

/// Finite Blaschke product with the given zeros.
cd blaschke(const std::vector<cd>& zeros, cd z);

/// Rows (re lambda, im lambda, re mu, im mu, re K, im K).
void write_kernel_csv(std::ostream& out, const KernelMatrix& k);

}  // namespace leftinv
