#include "leftinv/wold.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace leftinv {
namespace {

double tail_mass(const CMatrix& q, Index margin) {
  margin = std::min(margin, q.rows());
  return q.rows() && q.cols() ? q.bottomRows(margin).cwiseAbs().maxCoeff() : 0.0;
}

/// Orthonormal basis of ran(T^depth) restricted to inputs on the first n
/// coordinates, advanced one factor at a time so every step is well conditioned.
CMatrix range_of_power(const OperatorSpec& spec, Index n, int depth) {
  CMatrix q = CMatrix::Identity(n, n);
  for (int k = 0; k < depth; ++k) {
    const CMatrix image = truncate_sparse(spec, q.rows()) * q;
    Eigen::HouseholderQR<CMatrix> qr(image);
    q = qr.householderQ() * CMatrix::Identity(image.rows(), image.cols());
  }
  return q;
}

/// Window vectors lying (numerically) inside the span of the orthonormal q.
CMatrix window_part(const CMatrix& q, Index window, Index rows) {
  const auto f = svd_factor(CMatrix(q.topRows(window)));
  Index keep = 0;
  while (keep < f.singular_values.size() && f.singular_values(keep) * f.singular_values(keep) > 0.5) {
    ++keep;
  }
  CMatrix out = CMatrix::Zero(rows, keep);
  out.topRows(window) = f.left_vectors.leftCols(keep);
  return out;
}

}  // namespace

std::string to_string(AnalyticVerdict v) {
  switch (v) {
    case AnalyticVerdict::Analytic: return "Analytic";
    case AnalyticVerdict::NotAnalytic: return "NotAnalytic";
    case AnalyticVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CMatrix orbit_span(const CMatrix& a, const CMatrix& e, int depth, Index margin, bool strict) {
  CMatrix q = orthonormal_span(e);
  for (int k = 1; k < depth; ++k) {
    CMatrix stacked(e.rows(), e.cols() + q.cols());
    stacked << e, a * q;
    CMatrix next = orthonormal_span(stacked);
    if (tail_mass(next, margin) > 1e-8) {
      if (strict) {
        throw Error(ErrorKind::WindowTooSmall, "orbit of depth " + std::to_string(depth) +
                                                   " reaches the truncation edge at power " +
                                                   std::to_string(k));
      }
      break;
    }
    q = std::move(next);
  }
  return q;
}

double coverage_defect(const CMatrix& q, Index window) {
  if (window <= 0) return 0.0;
  if (q.cols() == 0) return 1.0;
  return std::clamp(1.0 - q.topRows(window).squaredNorm() / double(window), 0.0, 1.0);
}

WoldReport wold_subspaces(const SpecPtr& spec, Index n, int depth, VerdictPolicy policy) {
  if (depth < 4) throw Error(ErrorKind::WindowTooSmall, "depth must be at least 4");
  const MpPackage pkg = moore_penrose(spec, n);
  const CMatrix e = defect_basis(pkg, pkg.window(0));
  if (e.cols() == 0) {
    throw Error(ErrorKind::NotNatural, "ker T* is trivial; there is no wandering subspace");
  }

  WoldReport r;
  r.n = n;
  r.depth = depth;
  r.probe_window = depth / 2;
  if (r.probe_window > pkg.window(0)) {
    throw Error(ErrorKind::WindowTooSmall, "probe window exceeds the certified window");
  }

  const CMatrix dual = pkg.dagger().adjoint();
  r.h_a_prime_basis = orbit_span(dual, e, depth, pkg.margin());
  const CMatrix half = orbit_span(dual, e, depth / 2, pkg.margin());
  r.density_defect = coverage_defect(r.h_a_prime_basis, r.probe_window);
  r.density_defect_half = coverage_defect(half, r.probe_window / 2);

  r.h_a_basis = orbit_span(pkg.op(), e, depth, pkg.margin(), false);
  const CMatrix range = range_of_power(*spec, n, depth);
  r.h_i_basis = window_part(range, r.probe_window, n);

  r.min_principal_angle_i_a = std::numbers::pi / 2;
  if (r.h_i_basis.cols() && r.h_a_basis.cols()) {
    r.min_principal_angle_i_a = std::acos(std::min(1.0, max_overlap(r.h_i_basis, r.h_a_basis)));
  }

  if (r.density_defect < policy.analytic && r.density_defect <= r.density_defect_half + 1e-12) {
    r.analytic_verdict = AnalyticVerdict::Analytic;
  } else if (r.density_defect > policy.not_analytic && r.density_defect_half > policy.not_analytic) {
    r.analytic_verdict = AnalyticVerdict::NotAnalytic;
  }
  return r;
}

DualDecomposition dual_decomposition_check(const WoldReport& report) {
  DualDecomposition d;
  d.orthogonality_gap = max_overlap(report.h_i_basis, report.h_a_prime_basis);
  CMatrix both(report.n, report.h_i_basis.cols() + report.h_a_prime_basis.cols());
  both << report.h_i_basis, report.h_a_prime_basis;
  d.completeness_gap = coverage_defect(orthonormal_span(both), report.probe_window);
  return d;
}

DualDecomposition dual_decomposition_check(const SpecPtr& spec, Index n, int depth) {
  return dual_decomposition_check(wold_subspaces(spec, n, depth));
}

CMatrix dual_orbit_span(const MpPackage& pkg, const CMatrix& l, int depth) {
  const CMatrix adjoint = l.leftCols(pkg.n()).adjoint();
  return orbit_span(adjoint, defect_basis(pkg, pkg.window(0)), depth, pkg.margin());
}

Index adjoint_power_kernel_dim(const SpecPtr& spec, int k, Index m, RankTolerance tol) {
  const CMatrix power = apply_adjoint_power(*spec, CMatrix::Identity(m, m), k);
  return kernel_basis(power, tol).cols();
}

bool FailedWoldReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

FailedWoldReport failed_wold_report(Index n) {
  if (n < 16) throw Error(ErrorKind::SpecInvalid, "failed_wold_report needs n >= 16");
  const SpecPtr spec = failed_wold_composite();
  const IndexSpace& space = spec->domain();
  using Side = IndexSpace::Side;
  constexpr int kGramTerms = 30;
  FailedWoldReport report;

  // Orbit of the first natural basis vector, exactly.
  std::vector<CVector> orbit;
  double orbit_error = 0.0;
  for (int k = 0; k <= kGramTerms; ++k) {
    const CVector v = apply_power(*spec, CMatrix::Identity(1, 1), k).col(0);
    CVector expected = CVector::Zero(v.size());
    expected(space.join(Side::Left, k)) = 1.0;
    if (k > 0) expected(space.join(Side::Right, IndexSpace::position_of_integer(k))) = double(k);
    orbit_error = std::max(orbit_error, max_abs(CVector(v - expected)));
    orbit.push_back(v);
  }
  report.checks.push_back(at_most("orbit_formula", orbit_error, 1e-12));

  const MpPackage pkg = moore_penrose(spec, n);
  const CMatrix e = defect_basis(pkg, pkg.window(0));
  const double kernel_error = e.cols() == 1 ? 1.0 - std::abs(e(0, 0)) : 1.0;
  report.checks.push_back(at_most("adjoint_kernel_is_first_vector", kernel_error, 1e-12));

  const Index len = orbit.back().size();
  CMatrix stacked = CMatrix::Zero(len, kGramTerms + 1);
  for (int k = 0; k <= kGramTerms; ++k) stacked.col(k).head(orbit[k].size()) = orbit[k];
  const CMatrix gram = stacked.adjoint() * stacked;
  CMatrix expected_gram = CMatrix::Zero(kGramTerms + 1, kGramTerms + 1);
  for (int k = 0; k <= kGramTerms; ++k) {
    expected_gram(k, k) = 1.0 + double(k) * k;
    report.gram_diagonal.push_back(gram(k, k).real());
  }
  report.checks.push_back(at_most("gram_diagonal", max_abs(CMatrix(gram - expected_gram)), 1e-12));

  const int depth = static_cast<int>(std::clamp<Index>(n / 4, 8, 32));
  const WoldReport wold = wold_subspaces(spec, n, depth);
  double left_mass = wold.h_i_basis.cols() ? 0.0 : 1.0;
  for (Index c = 0; c < wold.h_i_basis.cols(); ++c) {
    double mass = 0.0;
    for (Index p = 0; p < wold.h_i_basis.rows(); ++p) {
      if (space.split(p).side == Side::Left) mass += std::norm(wold.h_i_basis(p, c));
    }
    left_mass = std::max(left_mass, std::sqrt(mass));
  }
  report.checks.push_back(at_most("invariant_part_in_bilateral_half", left_mass, 1e-12));
  report.checks.push_back(
      at_least("invariant_and_wandering_overlap",
               max_overlap(wold.h_i_basis, wold.h_a_basis), 0.1));
  const Index f2 = space.join(Side::Right, IndexSpace::position_of_integer(2));
  report.checks.push_back(
      at_most("overlap_witness", std::abs(std::abs(orbit[2](f2)) - 2.0), 1e-12));

  report.index = fredholm_index(spec, n);
  report.checks.push_back(holds("index_minus_one", report.index == -1));
  report.verdict = wold.analytic_verdict;
  report.checks.push_back(holds("verdict_not_analytic", report.verdict == AnalyticVerdict::NotAnalytic));

  bool kernel_dims = true;
  for (int k = 1; k <= 8; ++k) kernel_dims &= adjoint_power_kernel_dim(spec, k, n) == k;
  report.checks.push_back(holds("adjoint_power_kernel_dims", kernel_dims));
  return report;
}

}  // namespace leftinv
