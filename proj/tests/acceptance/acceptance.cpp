// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// only when a criterion outside kExpectedFailures fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "leftinv/basis.hpp"
#include "leftinv/cdmodel.hpp"
#include "leftinv/cli.hpp"
#include "leftinv/families.hpp"
#include "leftinv/spec_io.hpp"
#include "leftinv/symalg/evaluate.hpp"
#include "leftinv/wold.hpp"

using namespace leftinv;

namespace {

constexpr Index kSize = 256;
constexpr Index kMaxSize = 1024;

// Criterion 3 cannot hold as stated: toeplitz_exp's dual vectors outgrow
// double precision, and a non-dagger left inverse is biorthogonal only for
// m >= j (see README, "Known failing criterion").
const std::set<int> kExpectedFailures{3};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Runs `body` at kSize, doubling n while the truncation is too small.
template <class F>
void grow_until_fits(const SpecPtr& spec, Outcome& o, const std::string& name, F body) {
  for (Index n = kSize;; n *= 2) {
    try {
      body(spec, n);
      if (n != kSize) o.detail << " " << name << "@n=" << n;
      return;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowTooSmall || 2 * n > kMaxSize) {
        o.require(false, name + ": " + e.what());
        return;
      }
    }
  }
}

Outcome moore_penrose_formula() {
  Outcome o;
  double worst_formula = 0.0, worst_left = 0.0, slowest = 0.0;
  for (const auto& f : builtin_families()) {
    const auto start = std::chrono::steady_clock::now();
    const MpPackage pkg = moore_penrose(f.spec, kSize);
    const double formula = spectral_norm(CMatrix(pkg.t_dagger - pinv(pkg.t.matrix)));
    const double left = spectral_norm(CMatrix(pkg.t_dagger * pkg.t.matrix - CMatrix::Identity(kSize, kSize)));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(formula < 1e-8, f.name + " formula " + fmt(formula));
    o.require(left < 1e-9, f.name + " left inverse " + fmt(left));
    o.require(seconds < 5.0, f.name + " took " + fmt(seconds) + " s");
    worst_formula = std::max(worst_formula, formula);
    worst_left = std::max(worst_left, left);
    slowest = std::max(slowest, seconds);
  }
  o.detail << " formula " << fmt(worst_formula) << ", left " << fmt(worst_left) << ", slowest "
           << fmt(slowest) << " s";
  return o;
}

Outcome telescope() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : {"unilateral_shift", "weighted_shift", "alternating_shift"}) {
    const MpPackage pkg = moore_penrose(builtin_family(name).spec, kSize);
    for (const auto& row : telescope_check(pkg, 10)) worst = std::max(worst, row.deviation);
  }
  o.require(worst < 1e-10, "deviation " + fmt(worst));
  o.detail << " deviation " << fmt(worst);
  return o;
}

Outcome biorthogonality() {
  Outcome o;
  for (const auto& f : builtin_families()) {
    if (!f.analytic_index_one) continue;
    try {
      const double b = biorthogonality_check(schauder_basis(f.spec, LeftInverseChoice::dagger(), 20, kSize));
      o.require(b < 1e-8, f.name);
      o.detail << " " << f.name << " " << fmt(b);
    } catch (const Error& e) {
      o.require(false, f.name + ": " + e.what());
    }
  }
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  CMatrix a(4, 4);
  for (Index j = 0; j < 4; ++j) {
    for (Index i = 0; i < 4; ++i) a(i, j) = 0.1 * cd(normal(rng), normal(rng));
  }
  const double custom = biorthogonality_check(
      schauder_basis(unilateral_shift(), LeftInverseChoice::custom(a), 20, kSize));
  o.require(custom < 1e-8, "non-dagger left inverse");
  o.detail << " custom " << fmt(custom);
  return o;
}

Outcome eigen_sections() {
  Outcome o;
  double worst = 0.0;
  for (const auto& f : builtin_families()) {
    grow_until_fits(f.spec, o, f.name, [&](const SpecPtr& spec, Index n) {
      const SectionModel model(spec, n);
      double family_worst = 0.0;
      for (cd lambda : default_grid(model.disc(), 64)) {
        const Section s = model.section(lambda);
        family_worst = std::max(family_worst, model.eigen_residual(s) / model.eigen_residual_bound(s));
      }
      o.require(family_worst <= 1.0, f.name + " residual/bound " + fmt(family_worst));
      worst = std::max(worst, family_worst);
    });
  }
  o.detail << " max residual/bound " << fmt(worst);
  return o;
}

Outcome kernels() {
  Outcome o;
  const SectionModel shift(unilateral_shift(), kSize);
  const auto grid = default_grid(shift.disc(), 64);
  const KernelMatrix k = shift.kernel(grid);
  double szego = 0.0;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      szego = std::max(szego, std::abs(k.values(a, b) - 1.0 / (1.0 - grid[a] * std::conj(grid[b]))));
    }
  }
  o.require(szego < 1e-8, "Szego " + fmt(szego));
  o.detail << " Szego " << fmt(szego);
  for (const auto& f : builtin_families()) {
    grow_until_fits(f.spec, o, f.name, [&](const SpecPtr& spec, Index n) {
      const SectionModel model(spec, n);
      const KernelMatrix km = model.kernel(default_grid(model.disc(), 64));
      o.require(km.hermitian_defect() < 1e-9, f.name + " hermitian " + fmt(km.hermitian_defect()));
      const double floor = -1e-8 * km.values.trace().real();
      o.require(km.min_eigenvalue() >= floor, f.name + " min eigenvalue " + fmt(km.min_eigenvalue()));
    });
  }
  return o;
}

Outcome intertwining() {
  Outcome o;
  double shift = 0.0, division = 0.0;
  for (const auto& f : builtin_families()) {
    grow_until_fits(f.spec, o, f.name, [&](const SpecPtr& spec, Index n) {
      const SectionModel model(spec, n);
      const auto r = model.intertwining_check(default_grid(model.disc(), 64), 20, 99);
      o.require(r.shift_deviation < 1e-7, f.name + " multiplication " + fmt(r.shift_deviation));
      o.require(r.division_deviation < 1e-7, f.name + " division " + fmt(r.division_deviation));
      shift = std::max(shift, r.shift_deviation);
      division = std::max(division, r.division_deviation);
    });
  }
  o.detail << " multiplication " << fmt(shift) << ", division " << fmt(division);
  return o;
}

Outcome dilation() {
  Outcome o;
  double worst = 0.0;
  for (const auto& f : builtin_families()) {
    const Index n = std::max(kSize, padded_size(f.spec, 32, 7));
    const auto d = symalg::dilation(f.spec, n, 5);
    o.require(d.max_residual() < 1e-9, f.name + " " + fmt(d.max_residual()));
    worst = std::max(worst, d.max_residual());
  }
  o.detail << " max residual " << fmt(worst);
  return o;
}

Outcome rewriter() {
  Outcome o;
  // Closed form of the corner products first, on the weighted shift.
  const symalg::Evaluator weighted(moore_penrose(builtin_family("weighted_shift").spec, kSize));
  double corner = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) corner = std::max(corner, symalg::corner_product_deviation(weighted, m, n));
  }
  o.require(corner < 1e-10, "corner product " + fmt(corner));
  o.detail << " corner " << fmt(corner);
  if (!o.pass) return o;

  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (const char* name : {"unilateral_shift", "weighted_shift"}) {
    const symalg::Evaluator ev(moore_penrose(builtin_family(name).spec, kSize));
    for (int i = 0; i < 200; ++i) {
      worst = std::max(worst, symalg::soundness_deviation(symalg::random_expr(rng, 6), ev));
    }
  }
  o.require(worst < 1e-8, "soundness " + fmt(worst));
  o.detail << ", soundness " << fmt(worst);
  return o;
}

Outcome failed_wold() {
  Outcome o;
  const SpecPtr spec = failed_wold_composite();
  const IndexSpace& space = spec->domain();
  using Side = IndexSpace::Side;
  const CMatrix t = truncate(spec, kSize).matrix.topRows(kSize);
  CVector v = CVector::Unit(kSize, space.join(Side::Left, 0));
  double orbit = 0.0;
  for (int k = 1; k <= 30; ++k) {
    v = t * v;
    CVector expected = CVector::Zero(kSize);
    expected(space.join(Side::Left, k)) = 1.0;
    expected(space.join(Side::Right, IndexSpace::position_of_integer(k))) = double(k);
    orbit = std::max(orbit, (v - expected).cwiseAbs().maxCoeff());
  }
  o.require(orbit == 0.0, "orbit " + fmt(orbit));

  const FailedWoldReport r = failed_wold_report(kSize);
  for (const auto& c : r.checks) o.require(c.pass, c.name + " " + fmt(c.value));
  double gram = 0.0;
  for (int k = 0; k <= 30; ++k) gram = std::max(gram, std::abs(r.gram_diagonal[k] - (1.0 + k * k)));
  o.require(gram < 1e-12, "gram " + fmt(gram));
  o.require(r.index == -1, "index " + std::to_string(r.index));
  o.require(r.verdict == AnalyticVerdict::NotAnalytic, "verdict " + to_string(r.verdict));
  o.detail << " orbit exact, gram " << fmt(gram) << ", index " << r.index << ", " << to_string(r.verdict);
  return o;
}

std::map<int, cd> multiply(const std::map<int, cd>& a, const std::map<int, cd>& b) {
  std::map<int, cd> r;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) r[i + j] += x * y;
  }
  return r;
}

Outcome winding_index() {
  Outcome o;
  const int wind = winding_number(exp_symbol, 4096);
  o.require(wind == 1, "winding " + std::to_string(wind));
  int index = 0;
  try {
    index = fredholm_index(builtin_family("toeplitz_exp").spec, kSize);
  } catch (const Error& e) {
    o.require(false, e.what());
  }
  o.require(index == -1, "index " + std::to_string(index));

  // z^m times inner roots, outer roots and (1 - c/z) factors; the winding is
  // m plus the number of inner roots.
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto point = [&](double lo, double width) { return std::polar(lo + width * u(rng), 2.0 * M_PI * u(rng)); };
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = std::uniform_int_distribution<int>(-2, 1)(rng);
    const int inner = std::uniform_int_distribution<int>(0, 2)(rng);
    std::map<int, cd> c{{m, 1.0}};
    for (int i = 0; i < inner; ++i) c = multiply(c, {{0, -point(0.0, 0.7)}, {1, 1.0}});
    for (int i = std::uniform_int_distribution<int>(0, 2)(rng); i > 0; --i) {
      c = multiply(c, {{0, 1.0}, {1, -1.0 / point(1.5, 1.0)}});
    }
    if (u(rng) < 0.5) c = multiply(c, {{0, 1.0}, {-1, -point(0.0, 0.7)}});
    const int expected = m + inner;
    try {
      if (winding_number(c) == expected && fredholm_index(toeplitz(c), kSize / 2) == -expected) ++agree;
    } catch (const Error&) {
    }
  }
  o.require(agree == 20, std::to_string(agree) + "/20 symbols");
  o.detail << " winding " << wind << ", index " << index << ", random symbols " << agree << "/20";
  return o;
}

Outcome frame_bounds() {
  Outcome o;
  const FrameBounds b = frame_image_bounds(builtin_family("alternating_shift").spec, kSize);
  o.require(std::abs(b.lower - 1.0) < 1e-8 && std::abs(b.upper - 4.0) < 1e-8,
            "bounds " + fmt(b.lower) + ", " + fmt(b.upper));
  o.detail << " (" << fmt(b.lower) << ", " << fmt(b.upper) << ")";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto path = std::filesystem::temp_directory_path() / "leftinv_acceptance_spec.json";
  save_spec(path, *builtin_family("perturbed_shift").spec);
  cli::RunConfig config;
  config.spec_path = path;
  config.seed = 12345;
  const std::string first = cli::cmd_verify(config).to_json().dump(2);
  const std::string second = cli::cmd_verify(config).to_json().dump(2);
  o.require(first == second, "reports differ");
  o.detail << " " << first.size() << " bytes identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"moore_penrose_formula", moore_penrose_formula},
      {"telescoping_identity", telescope},
      {"biorthogonality", biorthogonality},
      {"eigenvector_sections", eigen_sections},
      {"kernel", kernels},
      {"intertwining", intertwining},
      {"dilation", dilation},
      {"rewriter", rewriter},
      {"composite_regression", failed_wold},
      {"winding_index", winding_index},
      {"frame_bounds", frame_bounds},
      {"determinism", determinism},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [error: " << e.what() << "]";
    }
    const bool expected = kExpectedFailures.count(id) > 0;
    if (!o.pass && !expected) ++unexpected;
    std::printf("%2d %-22s %s%s:%s\n", id, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                !o.pass && expected ? " (expected)" : "", o.detail.str().c_str());
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
