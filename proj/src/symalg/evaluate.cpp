#include "leftinv/symalg/evaluate.hpp"

#include <algorithm>

namespace leftinv::symalg {
namespace {

double max_entry(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// max |a - b| relative to the size of b's entries (at least 1).
double relative_gap(const CMatrix& a, const CMatrix& b) {
  return max_entry(a - b) / std::max(1.0, max_entry(b));
}

CMatrix power_apply(const CMatrix& a, CMatrix x, int k) {
  for (int i = 0; i < k; ++i) x = a * x;
  return x;
}

}  // namespace

Evaluator::Evaluator(MpPackage pkg) : pkg_(std::move(pkg)) {
  t_ = pkg_.op();
  d_ = pkg_.dagger();
  p_ = pkg_.defect();
}

CMatrix Evaluator::apply(Atom a, const CMatrix& x) const {
  switch (a) {
    case Atom::T: return t_ * x;
    case Atom::D: return d_ * x;
    case Atom::P: return p_ * x;
    case Atom::I: return x;
  }
  return x;
}

CMatrix Evaluator::apply(const Expr& e, const CMatrix& x) const {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const Term& t : e.terms) {
    CMatrix y = x;
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      if (it->is_group()) {
        y = apply(*it->group, y);
      } else {
        for (int k = 0; k < it->power; ++k) y = apply(it->atom, y);
      }
    }
    out += t.scalar * y;
  }
  return out;
}

CMatrix Evaluator::apply(const NormalForm& nf, const CMatrix& x) const {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  // Td^j x, shared between the Laurent and finite-rank parts.
  std::vector<CMatrix> down{x};
  auto dagger_power = [&](int j) -> const CMatrix& {
    while (static_cast<int>(down.size()) <= j) down.push_back(d_ * down.back());
    return down[j];
  };
  for (const auto& [k, c] : nf.laurent) {
    out += c * (k >= 0 ? power_apply(t_, x, k) : dagger_power(-k));
  }
  for (const auto& [ij, c] : nf.finite_rank) {
    out += c * power_apply(t_, p_ * dagger_power(ij.second), ij.first);
  }
  return out;
}

CMatrix Evaluator::columns(Index window) const {
  if (window < 1) throw Error(ErrorKind::WindowTooSmall, "evaluation window is empty");
  return CMatrix::Identity(pkg_.n(), window);
}

CMatrix Evaluator::evaluate(const Expr& e, Index window) const {
  pkg_.require_window(e.word_length(), window);
  return apply(e, columns(window)).topRows(window);
}

CMatrix Evaluator::evaluate(const NormalForm& nf, Index window) const {
  pkg_.require_window(nf.word_length(), window);
  return apply(nf, columns(window)).topRows(window);
}

CMatrix evaluate(const Expr& e, const SpecPtr& spec, Index n) {
  const Evaluator ev(moore_penrose(spec, n));
  return ev.evaluate(e, ev.package().require_window(e.word_length()));
}

CMatrix evaluate(const NormalForm& nf, const SpecPtr& spec, Index n) {
  const Evaluator ev(moore_penrose(spec, n));
  return ev.evaluate(nf, ev.package().require_window(nf.word_length()));
}

double soundness_deviation(const Expr& e, const Evaluator& ev) {
  const NormalForm nf = normalize(e);
  const Index window = std::min(
      kCheckWindow, ev.package().require_window(std::max(e.word_length(), nf.word_length())));
  return relative_gap(ev.evaluate(nf, window), ev.evaluate(e, window));
}

double corner_product_deviation(const Evaluator& ev, int m, int n) {
  // Each corner D_k has words of length k + 1, the closed form at most m + n.
  const Index window = std::min(kCheckWindow, ev.package().require_window(m + n + 2));
  const CMatrix e = CMatrix::Identity(ev.package().n(), window);
  const CMatrix direct = ev.apply(dilation_corner(m), ev.apply(dilation_corner(n), e));
  const CMatrix closed = ev.apply(dilation_corner_product(m, n), e);
  return relative_gap(direct.topRows(window), closed.topRows(window));
}

double DilationPackage::max_residual() const {
  double worst = product_residual;
  for (double r : power_residuals) worst = std::max(worst, r);
  for (double r : inverse_power_residuals) worst = std::max(worst, r);
  return worst;
}

DilationPackage dilation(const MpPackage& pkg, int k_max) {
  const Evaluator ev(pkg);
  DilationPackage out;
  const Index n = pkg.n();
  out.n = n;
  out.window = std::min(kCheckWindow, pkg.require_window(k_max + 2, 8));
  const Index w = out.window;

  const CMatrix t = pkg.op();
  const CMatrix d = pkg.dagger();
  const CMatrix p = pkg.defect();
  out.w = CMatrix::Zero(2 * n, 2 * n);
  out.w.topLeftCorner(n, n) = d;
  out.w.bottomLeftCorner(n, n) = p;
  out.w.bottomRightCorner(n, n) = t;
  out.w_inv = CMatrix::Zero(2 * n, 2 * n);
  out.w_inv.topLeftCorner(n, n) = t;
  out.w_inv.topRightCorner(n, n) = p;
  out.w_inv.bottomRightCorner(n, n) = d;

  const CMatrix e = CMatrix::Identity(n, w);
  CMatrix start = CMatrix::Zero(2 * n, 2 * w);
  start.topLeftCorner(n, w) = e;
  start.bottomRightCorner(n, w) = e;

  auto window_rows = [&](const CMatrix& y) {
    CMatrix r(2 * w, 2 * w);
    r << y.topRows(w), y.middleRows(n, w);
    return r;
  };
  auto blocks = [&](const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& dd) {
    CMatrix r(2 * w, 2 * w);
    r << a.topRows(w), b.topRows(w), c.topRows(w), dd.topRows(w);
    return r;
  };

  const CMatrix identity = CMatrix::Identity(2 * w, 2 * w);
  out.product_residual = relative_gap(window_rows(out.w * (out.w_inv * start)), identity);

  const CMatrix zero = CMatrix::Zero(n, w);
  CMatrix forward = start;
  CMatrix backward = start;
  for (int k = 1; k <= k_max; ++k) {
    forward = out.w * forward;
    backward = out.w_inv * backward;
    const CMatrix corner = ev.apply(dilation_corner(k), e);
    out.d_n_cache[k] = corner;
    const CMatrix tk = power_apply(t, e, k);
    const CMatrix dk = power_apply(d, e, k);
    out.power_residuals.push_back(relative_gap(window_rows(forward), blocks(dk, zero, corner, tk)));
    out.inverse_power_residuals.push_back(
        relative_gap(window_rows(backward), blocks(tk, corner, zero, dk)));
  }
  return out;
}

DilationPackage dilation(const SpecPtr& spec, Index n, int k_max) {
  return dilation(moore_penrose(spec, n), k_max);
}

RankOneFactor rank_one_factors(const MpPackage& pkg, int a, int b, const LeftInverseChoice& choice) {
  const Index n = pkg.n();
  const Index w = pkg.require_window(a + b + 2);
  const CMatrix l = resolve_left_inverse(pkg, choice).leftCols(n);
  const CMatrix e = CMatrix::Identity(n, w);
  CMatrix f = pkg.defect() * power_apply(l, e, b);
  f = power_apply(pkg.op(), f, a);

  const CVector x0 = wandering_vector(pkg);
  const CVector xa = resized(apply_power(*pkg.t.spec, x0, a).col(0), w);
  const CVector dual = power_apply(l.adjoint(), x0, b).col(0).head(w);

  RankOneFactor out;
  out.matrix = f.topRows(w);
  out.rank_one_deviation = spectral_norm(CMatrix(out.matrix - xa * dual.adjoint()));
  const auto sigma = singular_values(out.matrix);
  out.second_singular_ratio = sigma.size() > 1 && sigma(0) > 0 ? sigma(1) / sigma(0) : 0.0;
  return out;
}

RankOneFactor rank_one_factors(const SpecPtr& spec, int a, int b, const LeftInverseChoice& choice,
                               Index n) {
  return rank_one_factors(moore_penrose(spec, n), a, b, choice);
}

CommutatorProfile commutator_compactness(const Expr& x, const Expr& y, const Evaluator& ev) {
  const Expr commutator = sum(product(x, y), product(y, x), -1.0);
  const Index window = ev.package().require_window(commutator.word_length(), 8);
  const CMatrix c = ev.evaluate(commutator, window);
  const double scale = std::max(1.0, spectral_norm(ev.evaluate(x, window)) *
                                         spectral_norm(ev.evaluate(y, window)));
  const auto sigma = singular_values(c);

  CommutatorProfile out;
  for (Index k = 0; k < sigma.size() && k < 8; ++k) out.sigma_profile.push_back(sigma(k));
  while (out.rank_estimate < sigma.size() && sigma(out.rank_estimate) > 1e-9 * scale) {
    ++out.rank_estimate;
  }
  const NormalForm nf = normalize(commutator);
  out.symbolic_bound = static_cast<Index>(nf.finite_rank.size());
  out.laurent_vanishes = nf.laurent.empty();
  return out;
}

CommutatorProfile commutator_compactness(const Expr& x, const Expr& y, const SpecPtr& spec, Index n) {
  return commutator_compactness(x, y, Evaluator(moore_penrose(spec, n)));
}

}  // namespace leftinv::symalg
