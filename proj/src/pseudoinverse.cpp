#include "leftinv/pseudoinverse.hpp"

#include <Eigen/Eigenvalues>

namespace leftinv {
namespace {

Index edge_margin(Index guard) { return 2 * guard + 8; }

CMatrix hermitian_solve(const CMatrix& t, const CMatrix& rhs) {
  const CMatrix gram = t.adjoint() * t;
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotLeftInvertible, "T*T is not numerically positive definite");
  }
  return llt.solve(rhs);
}

}  // namespace

PenroseResiduals penrose_residuals(const CMatrix& a, const CMatrix& x) {
  const CMatrix ax = a * x;
  const CMatrix xa = x * a;
  PenroseResiduals r;
  r.axa = spectral_norm(CMatrix(ax * a - a));
  r.xax = spectral_norm(CMatrix(xa * x - x));
  r.ax_hermitian = spectral_norm(CMatrix(ax.adjoint() - ax));
  r.xa_hermitian = spectral_norm(CMatrix(xa.adjoint() - xa));
  return r;
}

Index MpPackage::window(int factors) const {
  return std::max<Index>(0, n() - margin() - factors * guard());
}

Index MpPackage::require_window(int factors, Index needed) const {
  const Index w = window(factors);
  if (w < needed) {
    throw Error(ErrorKind::WindowTooSmall,
                "truncation size " + std::to_string(n()) + " certifies only " + std::to_string(w) +
                    " coordinates for " + std::to_string(factors) + " factors; need " +
                    std::to_string(needed));
  }
  return w;
}

Index padded_size(const SpecPtr& spec, Index needed, int factors) {
  const Index g = spec->band().guard();
  return needed + edge_margin(g) + factors * g;
}

MpPackage moore_penrose(const SpecPtr& spec, Index n, RankTolerance tol) {
  MpPackage pkg;
  pkg.certificate = left_invertibility_certificate(spec, n, tol);
  if (!pkg.certificate.is_left_invertible) {
    throw Error(ErrorKind::NotLeftInvertible,
                "sigma_min " + std::to_string(pkg.certificate.sigma_min) + " is below the cutoff");
  }
  pkg.t = truncate(spec, n);
  const CMatrix& t = pkg.t.matrix;
  pkg.t_dagger = hermitian_solve(t, t.adjoint());
  pkg.range_proj = t * pkg.t_dagger;
  pkg.defect_proj = CMatrix::Identity(t.rows(), t.rows()) - pkg.range_proj;
  pkg.dagger_norm = 1.0 / pkg.certificate.sigma_min;
  return pkg;
}

CMatrix defect_basis(const MpPackage& pkg, Index window) {
  window = std::min(window, pkg.n());
  const CMatrix block = pkg.defect_proj.topLeftCorner(window, window);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(CMatrix((block + block.adjoint()) / 2.0));
  std::vector<Index> keep;
  for (Index i = eig.eigenvalues().size() - 1; i >= 0; --i) {
    if (eig.eigenvalues()(i) > 0.5) keep.push_back(i);
  }
  CMatrix basis = CMatrix::Zero(pkg.n(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Index>(c)).head(window) = eig.eigenvectors().col(keep[c]);
  }
  return basis;
}

CauchyDual cauchy_dual(const MpPackage& pkg) {
  CauchyDual dual;
  dual.matrix = pkg.t_dagger.adjoint();
  const CMatrix dual_dagger = hermitian_solve(dual.matrix, dual.matrix.adjoint());
  dual.dagger_is_adjoint = spectral_norm(CMatrix(dual_dagger - pkg.t.matrix.adjoint()));
  dual.kernel_gap = subspace_gap(kernel_basis(CMatrix(dual.matrix.adjoint())),
                                 kernel_basis(CMatrix(pkg.t.matrix.adjoint())));
  return dual;
}

int cauchy_dual_index(const SpecPtr& spec, Index n, RankTolerance tol) {
  const int at_n = truncated_index(moore_penrose(spec, n, tol).t_dagger.adjoint(), n / 2, tol);
  const int at_2n = truncated_index(moore_penrose(spec, 2 * n, tol).t_dagger.adjoint(), n, tol);
  if (at_n != at_2n) {
    throw Error(ErrorKind::Unstable, "Cauchy dual index estimates disagree across sizes");
  }
  return at_n;
}

CMatrix embed_parameter(const MpPackage& pkg, const CMatrix& block) {
  const Index rows = pkg.n();
  const Index cols = pkg.t.matrix.rows();
  if (block.rows() > rows || block.cols() > cols) {
    throw Error(ErrorKind::WindowTooSmall, "left-inverse parameter larger than the truncation");
  }
  CMatrix a = CMatrix::Zero(rows, cols);
  a.topLeftCorner(block.rows(), block.cols()) = block;
  return a;
}

CMatrix left_inverse(const MpPackage& pkg, const CMatrix& a) {
  if (a.rows() != pkg.t_dagger.rows() || a.cols() != pkg.t_dagger.cols()) {
    throw Error(ErrorKind::SpecInvalid, "left-inverse parameter must be n x (n + guard)");
  }
  return pkg.t_dagger + a * pkg.defect_proj;
}

LeftInverseParameter recover_parameter(const MpPackage& pkg, const CMatrix& l,
                                       const CMatrix& reference_a) {
  LeftInverseParameter out;
  out.a_prime = l * pkg.defect_proj;
  const Index n = pkg.n();
  out.left_residual = spectral_norm(CMatrix(l * pkg.t.matrix - CMatrix::Identity(n, n)));
  out.mismatch = spectral_norm(CMatrix(reference_a * pkg.defect_proj - out.a_prime * pkg.defect_proj));
  return out;
}

PerturbationResult perturbation_left_inverse(const SpecPtr& t, const SpecPtr& s, Index n,
                                             RankTolerance tol) {
  const MpPackage pkg = moore_penrose(t, n, tol);
  const Index rows = n + std::max(t->band().lower, s->band().lower);
  const CMatrix tm = truncate_rows(*t, n, rows);
  const CMatrix sm = truncate_rows(*s, n, rows);

  PerturbationResult out;
  out.gap = spectral_norm(CMatrix(tm - sm));
  if (!(out.gap < 1.0 / pkg.dagger_norm)) {
    throw Error(ErrorKind::PerturbationTooLarge,
                "||T - S|| = " + std::to_string(out.gap) + " is not below 1/||T^dagger|| = " +
                    std::to_string(1.0 / pkg.dagger_norm));
  }
  CMatrix dagger = CMatrix::Zero(n, rows);
  dagger.leftCols(pkg.t_dagger.cols()) = pkg.t_dagger;
  const CMatrix core = dagger * sm;
  out.left_inverse = core.partialPivLu().solve(dagger);
  out.left_residual = spectral_norm(CMatrix(out.left_inverse * sm - CMatrix::Identity(n, n)));
  out.index_match = fredholm_index(s, n, tol) == fredholm_index(t, n, tol);
  return out;
}

std::vector<TelescopeRow> telescope_check(const MpPackage& pkg, int n_max) {
  pkg.require_window(2 * n_max);
  const Index n = pkg.n();
  const CMatrix t = pkg.op();
  const CMatrix d = pkg.dagger();
  const CMatrix p = pkg.defect();
  const CMatrix id = CMatrix::Identity(n, n);

  std::vector<TelescopeRow> rows;
  CMatrix sum = CMatrix::Zero(n, n);
  CMatrix tj = id;  // T^j
  CMatrix dj = id;  // T^dagger^j
  for (int k = 1; k <= n_max; ++k) {
    sum += tj * p * dj;
    tj = t * tj;
    dj = d * dj;
    TelescopeRow row;
    row.power = k;
    row.window = pkg.window(2 * k);
    const Index w = row.window;
    const CMatrix complement = id - tj * dj;
    row.deviation = spectral_norm(CMatrix((complement - sum).topLeftCorner(w, w)));

    const CMatrix e = defect_basis(pkg, w);
    CMatrix orbit(n, e.cols() * k);
    CMatrix te = e;
    for (int j = 0; j < k; ++j) {
      orbit.middleCols(j * e.cols(), e.cols()) = te;
      te = t * te;
    }
    const CMatrix orbit_span = orthonormal_span(CMatrix(orbit.topRows(w)), RankTolerance{1e-8});
    const CMatrix kernel_span =
        orthonormal_span(CMatrix(complement.topLeftCorner(w, w)), RankTolerance{1e-6});
    row.kernel_gap = subspace_gap(orbit_span, kernel_span);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace leftinv
