#include "leftinv/basis.hpp"

#include <ostream>

#include "leftinv/wold.hpp"

namespace leftinv {

CMatrix resolve_left_inverse(const MpPackage& pkg, const LeftInverseChoice& choice) {
  if (choice.kind == LeftInverseChoice::Kind::Dagger) return pkg.t_dagger;
  return left_inverse(pkg, embed_parameter(pkg, choice.a_block));
}

CVector wandering_vector(const MpPackage& pkg) {
  const CMatrix e = defect_basis(pkg, pkg.window(0));
  if (e.cols() != 1) throw Error(ErrorKind::IndexNotMinusOne, "ker T* is not one-dimensional");
  CVector x0 = e.col(0).normalized();
  const double scale = max_abs(x0);
  for (Index i = 0; i < x0.size(); ++i) {
    if (std::abs(x0(i)) > 1e-8 * scale) {
      x0 *= std::conj(x0(i)) / std::abs(x0(i));
      x0(i) = std::abs(x0(i));
      break;
    }
  }
  return x0;
}

BasisPair schauder_basis(const MpPackage& pkg, const LeftInverseChoice& choice, int j_max) {
  if (j_max < 1) throw Error(ErrorKind::WindowTooSmall, "j_max must be positive");
  BasisPair pair;
  pair.n = pkg.n();
  pair.count = j_max;
  pair.left_inverse_used = choice;
  pair.x0 = wandering_vector(pkg);

  const CMatrix l_adjoint = resolve_left_inverse(pkg, choice).leftCols(pkg.n()).adjoint();
  const OperatorSpec& spec = *pkg.t.spec;
  CVector x = pair.x0;
  CVector dual = pair.x0;
  for (int j = 0; j < j_max; ++j) {
    const double edge = dual.tail(pkg.margin()).cwiseAbs().maxCoeff();
    if (edge > 1e-10 * dual.norm()) {
      throw Error(ErrorKind::WindowTooSmall, "dual basis vector " + std::to_string(j) +
                                                 " reaches the truncation edge; raise n");
    }
    pair.x.push_back(x);
    pair.x_dual.push_back(dual);
    x = apply_power(spec, x, 1).col(0);
    dual = l_adjoint * dual;
  }
  return pair;
}

BasisPair schauder_basis(const SpecPtr& spec, const LeftInverseChoice& choice, int j_max, Index n) {
  const int index = fredholm_index(spec, n);
  if (index != -1) {
    throw Error(ErrorKind::IndexNotMinusOne, "Fredholm index is " + std::to_string(index));
  }
  if (wold_subspaces(spec, n, 16).analytic_verdict == AnalyticVerdict::NotAnalytic) {
    throw Error(ErrorKind::NotAnalytic, "kernels of powers of T* are not dense");
  }
  return schauder_basis(moore_penrose(spec, n), choice, j_max);
}

double biorthogonality_check(const BasisPair& pair) {
  double worst = 0.0;
  for (int m = 0; m < pair.count; ++m) {
    for (int j = 0; j < pair.count; ++j) {
      const cd ip = inner_padded(pair.x[m], pair.x_dual[j]);
      worst = std::max(worst, std::abs(ip - (m == j ? cd(1.0) : cd(0.0))));
    }
  }
  return worst;
}

Expansion expand(const CVector& f, const BasisPair& pair) {
  Expansion out;
  Index len = f.size();
  for (const auto& v : pair.x) len = std::max(len, v.size());
  CVector residual = resized(f, len);
  for (int j = 0; j < pair.count; ++j) {
    const cd c = inner_padded(f, pair.x_dual[j]);
    out.coeffs.push_back(c);
    residual -= c * resized(pair.x[j], len);
    out.reconstruction_error.push_back(residual.norm());
  }
  return out;
}

FrameBounds frame_image_bounds(const SpecPtr& spec, Index n) {
  const auto cert = left_invertibility_certificate(spec, n);
  if (!cert.is_left_invertible) {
    throw Error(ErrorKind::NotLeftInvertible, "truncation is not bounded below");
  }
  return {cert.sigma_min * cert.sigma_min, cert.sigma_max * cert.sigma_max};
}

void write_basis_csv(std::ostream& out, const BasisPair& pair) {
  Index rows = 0;
  for (const auto& v : pair.x) rows = std::max(rows, v.size());
  for (const auto& v : pair.x_dual) rows = std::max(rows, v.size());
  out << "coordinate";
  for (int j = 0; j < pair.count; ++j) out << ",re_x_" << j << ",im_x_" << j;
  for (int j = 0; j < pair.count; ++j) out << ",re_dual_" << j << ",im_dual_" << j;
  out << '\n';
  auto cell = [&](const CVector& v, Index i) {
    const cd z = i < v.size() ? v(i) : cd(0.0);
    out << ',' << z.real() << ',' << z.imag();
  };
  for (Index i = 0; i < rows; ++i) {
    out << i;
    for (const auto& v : pair.x) cell(v, i);
    for (const auto& v : pair.x_dual) cell(v, i);
    out << '\n';
  }
}

}  // namespace leftinv
