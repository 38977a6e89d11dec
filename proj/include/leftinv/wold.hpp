#pragma once

// Wold-type subspaces of a left-invertible operator and the analyticity test.

#include <string>
#include <vector>

#include "leftinv/check.hpp"
#include "leftinv/pseudoinverse.hpp"

namespace leftinv {

enum class AnalyticVerdict { Analytic, NotAnalytic, Inconclusive };
std::string to_string(AnalyticVerdict v);

/// Verdict thresholds; `analytic` and `not_analytic` bound the density defect.
struct VerdictPolicy {
  double analytic = 0.05;
  double not_analytic = 0.1;
};

struct WoldReport {
  Index n = 0;
  int depth = 0;
  Index probe_window = 0;     // leading coordinates the densities are measured on
  CMatrix h_i_basis;          // window vectors (numerically) inside ran(T^depth)
  CMatrix h_a_basis;          // span{T^k E : k < depth}
  CMatrix h_a_prime_basis;    // span{T'^k E : k < depth} = ker(T*^depth)
  double min_principal_angle_i_a = 0.0;  // radians; pi/2 when either space is empty
  double density_defect = 0.0;           // at `depth`
  double density_defect_half = 0.0;      // at depth / 2
  AnalyticVerdict analytic_verdict = AnalyticVerdict::Inconclusive;
};

/// Orthonormal basis of span{A^k E : k < depth}, built one power at a time.
/// Once the orbit reaches the last `margin` coordinates it is no longer
/// exact: with `strict` that throws WindowTooSmall, otherwise the span built
/// so far is returned.
CMatrix orbit_span(const CMatrix& a, const CMatrix& e, int depth, Index margin, bool strict = true);

/// 1 - (mean over the first `window` coordinates e_i of ||proj_Q e_i||^2)
/// for an orthonormal Q.
double coverage_defect(const CMatrix& q, Index window);

/// NotNatural when ker T* is trivial; WindowTooSmall when depth does not fit.
WoldReport wold_subspaces(const SpecPtr& spec, Index n, int depth, VerdictPolicy policy = {});

struct DualDecomposition {
  double orthogonality_gap = 0.0;  // largest |<u, v>|, u in h_i, v in h_a'
  double completeness_gap = 0.0;   // coverage defect of span(h_i + h_a') on the window
};

DualDecomposition dual_decomposition_check(const WoldReport& report);
DualDecomposition dual_decomposition_check(const SpecPtr& spec, Index n, int depth);

/// span{(L*)^k x0 : k < depth} for a left inverse L given on the truncation.
CMatrix dual_orbit_span(const MpPackage& pkg, const CMatrix& l, int depth);

/// dim ker((T*)^k) counted on vectors supported in the first m coordinates.
Index adjoint_power_kernel_dim(const SpecPtr& spec, int k, Index m, RankTolerance tol = {});

struct FailedWoldReport {
  std::vector<CheckRecord> checks;
  std::vector<double> gram_diagonal;  // <T^k x0, T^k x0>, k = 0..30
  int index = 0;
  AnalyticVerdict verdict = AnalyticVerdict::Inconclusive;
  bool pass() const;
};

/// Full numerical reproduction of the composite [[S, 0], [inclusion, U]]
/// on N + Z; n >= 16.
FailedWoldReport failed_wold_report(Index n);

}  // namespace leftinv
