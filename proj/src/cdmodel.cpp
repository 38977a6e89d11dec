#include "leftinv/cdmodel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace leftinv {

DiscParams omega_radius(const SpecPtr& spec, Index n) {
  const auto cert = left_invertibility_certificate(spec, n);
  if (!cert.is_left_invertible) {
    throw Error(ErrorKind::NotLeftInvertible, "truncation is not bounded below");
  }
  DiscParams d;
  d.dagger_norm = 1.0 / cert.sigma_min;
  d.radius = cert.sigma_min;
  return d;
}

std::vector<cd> default_grid(const DiscParams& disc, int points) {
  if (points < 2) throw Error(ErrorKind::BadGrid, "grid needs at least two points");
  std::vector<cd> grid;
  const int inner = points / 2;
  const int outer = points - inner;
  for (int k = 0; k < inner; ++k) {
    grid.push_back(std::polar(0.5 * disc.radius, 2 * std::numbers::pi * k / inner));
  }
  for (int k = 0; k < outer; ++k) {
    // Offset by half a step so the two circles do not share angles.
    grid.push_back(std::polar(0.8 * disc.radius, 2 * std::numbers::pi * (k + 0.5) / outer));
  }
  return grid;
}

double KernelMatrix::hermitian_defect() const {
  return values.size() ? max_abs(CMatrix(values - values.adjoint())) : 0.0;
}

double KernelMatrix::min_eigenvalue() const {
  if (!values.size()) return 0.0;
  const CMatrix h = 0.5 * (values + values.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SectionModel::SectionModel(const SpecPtr& spec, Index n, const LeftInverseChoice& choice)
    : spec_(spec), pkg_(moore_penrose(spec, n)) {
  disc_.dagger_norm = 1.0 / pkg_.certificate.sigma_min;
  disc_.radius = pkg_.certificate.sigma_min;
  x0_ = wandering_vector(pkg_);
  dual_op_ = resolve_left_inverse(pkg_, choice).leftCols(n).adjoint();
  dual_.push_back(x0_);
}

CVector SectionModel::dual_vector(int j) const {
  std::lock_guard lock(mutex_);
  while (static_cast<int>(dual_.size()) <= j) {
    const CVector& last = dual_.back();
    const double edge = last.tail(pkg_.margin()).cwiseAbs().maxCoeff();
    if (edge > 1e-10 * last.norm()) {
      throw Error(ErrorKind::WindowTooSmall, "dual basis vector " + std::to_string(dual_.size() - 1) +
                                                 " reaches the truncation edge; raise n");
    }
    dual_.push_back(dual_op_ * last);
  }
  return dual_[j];
}

CVector SectionModel::basis_vector(int j) const {
  return apply_power(*spec_, x0_, j).col(0);
}

int SectionModel::terms_for(cd lambda, double target) const {
  const double q = std::abs(lambda) * disc_.dagger_norm;
  if (q == 0.0) return 0;
  if (q >= 1.0) throw Error(ErrorKind::OutsideDisc, "|lambda| ||T^dagger|| >= 1");
  // q^{J+1} / (1 - q) < target
  const double j = std::log(target * (1.0 - q)) / std::log(q) - 1.0;
  return std::max(0, static_cast<int>(std::ceil(j)));
}

void SectionModel::require_inside(cd lambda) const {
  if (std::abs(lambda) > disc_.max_modulus() * (1.0 + 1e-12)) {
    throw Error(ErrorKind::OutsideDisc, "|lambda| exceeds the safety radius " +
                                            std::to_string(disc_.max_modulus()));
  }
}

Section SectionModel::section(cd lambda) const {
  require_inside(lambda);
  return section(lambda, terms_for(lambda));
}

Section SectionModel::section(cd lambda, int terms) const {
  require_inside(lambda);
  Section s;
  s.lambda = lambda;
  s.terms = terms;
  const Index n = pkg_.n();
  s.gamma = CVector::Zero(n);
  cd power = 1.0;
  for (int j = 0; j <= terms; ++j) {
    s.gamma += power * dual_vector(j);
    power *= lambda;
  }
  const double q = std::abs(lambda) * disc_.dagger_norm;
  s.tail_bound = std::pow(q, terms + 1) / (1.0 - q) * x0_.norm();
  const CMatrix system = CMatrix::Identity(n, n) - lambda * dual_op_;
  s.resolvent_gamma = system.partialPivLu().solve(x0_);
  return s;
}

SectionSample SectionModel::sample(const std::vector<cd>& grid) const {
  SectionSample out;
  for (cd lambda : grid) {
    Section s = section(lambda);
    out.lambdas.push_back(lambda);
    out.gammas.push_back(std::move(s.gamma));
    out.tail_bounds.push_back(s.tail_bound);
    out.series_terms.push_back(s.terms);
  }
  return out;
}

double SectionModel::eigen_residual(const Section& s) const {
  const Index n = pkg_.n();
  const CVector image = adjoint_truncation_sparse(*spec_, n) * s.gamma;
  const CVector diff = resized(image, n) - s.lambda * s.gamma;
  return (diff.norm() + (image.size() > n ? image.tail(image.size() - n).norm() : 0.0)) /
         s.gamma.norm();
}

double SectionModel::eigen_residual_bound(const Section& s) const {
  return s.tail_bound * (operator_norm() + std::abs(s.lambda)) / s.gamma.norm() + 1e-8;
}

KernelMatrix SectionModel::kernel(const std::vector<cd>& grid) const {
  const Index n = pkg_.n();
  CMatrix g(n, static_cast<Index>(grid.size()));
  for (std::size_t a = 0; a < grid.size(); ++a) g.col(a) = section(std::conj(grid[a])).gamma;
  // K(l_a, l_b) = <gamma(conj l_b), gamma(conj l_a)> = gamma_a^* gamma_b
  return {grid, g.adjoint() * g};
}

std::vector<cd> SectionModel::hat_transform(const CVector& f, const std::vector<cd>& grid) const {
  std::vector<cd> out;
  out.reserve(grid.size());
  for (cd lambda : grid) out.push_back(inner_padded(f, section(std::conj(lambda)).gamma));
  return out;
}

IntertwiningResult SectionModel::intertwining_check(const std::vector<cd>& grid, int trials,
                                                   std::uint64_t seed) const {
  constexpr Index kSupport = 16;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Index n = pkg_.n();
  std::vector<CVector> sections;
  for (cd lambda : grid) sections.push_back(section(std::conj(lambda)).gamma);

  IntertwiningResult r;
  for (int t = 0; t < trials; ++t) {
    CVector f = CVector::Zero(std::min(kSupport, n));
    for (Index i = 0; i < f.size(); ++i) f(i) = cd(normal(rng), normal(rng));
    const CVector tf = apply_power(*spec_, f, 1).col(0);
    const CVector df = pkg_.t_dagger * resized(f, pkg_.t_dagger.cols());
    const cd f_x0 = inner_padded(f, x0_);
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const cd lambda = grid[a];
      const cd hat_f = inner_padded(f, sections[a]);
      r.shift_deviation =
          std::max(r.shift_deviation, std::abs(inner_padded(tf, sections[a]) - lambda * hat_f));
      if (lambda != cd(0.0)) {
        r.division_deviation = std::max(
            r.division_deviation,
            std::abs(inner_padded(df, sections[a]) - (hat_f - f_x0) / lambda));
      }
    }
  }
  return r;
}

cd blaschke(const std::vector<cd>& zeros, cd z) {
  cd out = 1.0;
  for (cd a : zeros) out *= (z - a) / (1.0 - std::conj(a) * z);
  return out;
}

CombinedRank combine_sections(const SpecPtr& spec_direct_sum, const std::vector<cd>& phi2,
                              const std::vector<cd>& grid, Index n, Index window,
                              RankTolerance tol) {
  const auto* block = std::get_if<OperatorSpec::Block2x2>(&spec_direct_sum->variant());
  if (!block || !block->a || !block->d || block->b || block->c) {
    throw Error(ErrorKind::SpecInvalid, "combine_sections needs a block-diagonal direct sum");
  }
  if (phi2.size() != grid.size()) {
    throw Error(ErrorKind::BadGrid, "phi2 needs one sample per grid point");
  }
  if (static_cast<Index>(grid.size()) < 2 * window) {
    throw Error(ErrorKind::BadGrid, "grid needs at least 2 * window points");
  }
  const SectionModel first(block->a, n);
  const SectionModel second(block->d, n);
  const Index rows = static_cast<Index>(grid.size());
  CMatrix single(rows, window);
  CMatrix combined(rows, 2 * window);
  for (Index a = 0; a < rows; ++a) {
    // Sections are evaluated at conj(lambda) so that <f, section> is analytic in lambda,
    // while phi2 stays analytic: the mixed product is what makes the sum span.
    const cd mu = std::conj(grid[a]);
    const CVector g1 = first.section(mu).gamma.head(window);
    const CVector g2 = second.section(mu).gamma.head(window);
    single.row(a) = g1.transpose();
    combined.row(a) << g1.transpose(), phi2[a] * g2.transpose();
  }
  CombinedRank r;
  r.window_dim = 2 * window;
  r.gram_rank_single = numerical_rank_of(single, tol);
  r.gram_rank_combined = numerical_rank_of(combined, tol);
  return r;
}

void write_kernel_csv(std::ostream& out, const KernelMatrix& k) {
  out << "re_lambda,im_lambda,re_mu,im_mu,re_k,im_k\n";
  const auto old = out.precision(17);
  for (std::size_t a = 0; a < k.grid.size(); ++a) {
    for (std::size_t b = 0; b < k.grid.size(); ++b) {
      const cd v = k.values(a, b);
      out << k.grid[a].real() << ',' << k.grid[a].imag() << ',' << k.grid[b].real() << ','
          << k.grid[b].imag() << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  out.precision(old);
}

}  // namespace leftinv
