#include <fstream>
#include <functional>
#include <random>

#include "leftinv/basis.hpp"
#include "leftinv/cdmodel.hpp"
#include "leftinv/cli.hpp"
#include "leftinv/spec_io.hpp"
#include "leftinv/symalg/evaluate.hpp"
#include "leftinv/wold.hpp"

namespace leftinv::cli {
namespace {

using ojson = nlohmann::ordered_json;

constexpr int kDefaultBasisTerms = 20;
constexpr int kDefaultWoldDepth = 16;
constexpr int kRewriterTrials = 50;
constexpr int kIntertwiningTrials = 20;

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::SpecInvalid:
    case ErrorKind::NotLeftInvertible:
    case ErrorKind::SyntaxError:
    case ErrorKind::EmptyInput:
    case ErrorKind::BadGrid:
    case ErrorKind::OutsideDisc:
      return true;
    default:
      return false;
  }
}

/// Errors meaning "this suite does not apply to the operator".
bool is_not_applicable(ErrorKind k) {
  return k == ErrorKind::WindowTooSmall || k == ErrorKind::IndexNotMinusOne ||
         k == ErrorKind::NotAnalytic || k == ErrorKind::NotNatural;
}

ojson config_json(const RunConfig& c, const std::string& command) {
  ojson j = ojson::object();
  j["size"] = c.size;
  if (command != "verify" && command != "kernel") j["depth"] = c.depth;
  if (command == "verify" || command == "kernel") j["grid"] = c.grid;
  j["seed"] = c.seed;
  j["relative_cutoff"] = c.tolerance.relative_cutoff;
  return j;
}

Report start(const std::string& command, const RunConfig& config, SpecPtr& spec) {
  Report r;
  r.command = command;
  r.config = config_json(config, command);
  spec = load_spec(config.spec_path);
  r.spec = spec_to_json(*spec);
  return r;
}

/// Runs one suite; inapplicable suites are listed as skipped, numerical
/// failures become a failing record, invalid input propagates.
void suite(Report& r, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    if (is_input_error(e.kind())) throw;
    if (is_not_applicable(e.kind())) {
      r.skipped.push_back(name + ": " + e.what());
    } else {
      r.results.push_back({name + "_error", 1.0, 0.0, false});
      r.details[name + "_error"] = e.what();
    }
  }
}

std::filesystem::path output_path(const RunConfig& c, const std::string& file) {
  const auto dir = c.output_dir.value_or(std::filesystem::current_path());
  std::filesystem::create_directories(dir);
  return dir / file;
}

void seed_check(const RunConfig& c) {
  if (c.size < 16) throw Error(ErrorKind::SpecInvalid, "--size must be at least 16");
  if (c.grid < 2) throw Error(ErrorKind::BadGrid, "--grid must be at least 2");
}

}  // namespace

bool Report::pass() const {
  return std::all_of(results.begin(), results.end(), [](const CheckRecord& c) { return c.pass; });
}

ojson Report::to_json() const {
  ojson j = ojson::object();
  j["command"] = command;
  j["version"] = kVersion;
  j["spec"] = spec;
  j["config"] = config;
  ojson res = ojson::array();
  for (const auto& c : results) {
    ojson rec = ojson::object();
    rec["name"] = c.name;
    rec["value"] = c.value;
    rec["bound"] = c.bound;
    rec["pass"] = c.pass;
    res.push_back(std::move(rec));
  }
  j["results"] = std::move(res);
  if (!skipped.empty()) j["skipped"] = skipped;
  if (!details.empty()) j["details"] = details;
  j["pass"] = pass();
  return j;
}

RankTolerance tolerance_from_environment() {
  const char* env = std::getenv("LEFTINV_TOL");
  if (!env || !*env) return {};
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0') {
    throw Error(ErrorKind::SpecInvalid, std::string("LEFTINV_TOL is not a number: ") + env);
  }
  return RankTolerance::checked(v);
}

int exit_code_for(const Error& e) {
  return is_input_error(e.kind()) ? kInvalidInput : kToleranceFailure;
}

Report cmd_verify(const RunConfig& config) {
  seed_check(config);
  SpecPtr spec;
  Report r = start("verify", config, spec);
  const Index n = config.size;
  const MpPackage pkg = moore_penrose(spec, n, config.tolerance);
  std::mt19937_64 rng(config.seed);

  suite(r, "index", [&] { r.details["index"] = fredholm_index(spec, n, config.tolerance); });

  suite(r, "moore_penrose", [&] {
    const CMatrix& a = pkg.t.matrix;
    const auto res = penrose_residuals(a, pkg.t_dagger);
    const double scale = pkg.certificate.sigma_max * pkg.dagger_norm;
    r.results.push_back(at_most("penrose_axioms", res.max() / scale, 1e-9));
    r.results.push_back(
        at_most("dagger_formula_vs_pinv", spectral_norm(CMatrix(pkg.t_dagger - pinv(a, config.tolerance))), 1e-8));
    const CMatrix left = pkg.t_dagger * a - CMatrix::Identity(n, n);
    r.results.push_back(at_most("dagger_left_inverse", spectral_norm(left), 1e-9));
  });

  suite(r, "telescope", [&] {
    double worst = 0.0;
    for (const auto& row : telescope_check(pkg, 10)) worst = std::max(worst, row.deviation);
    r.results.push_back(at_most("telescope", worst, 1e-10));
  });

  suite(r, "wold", [&] {
    const WoldReport w = wold_subspaces(spec, n, kDefaultWoldDepth);
    r.details["analytic_verdict"] = to_string(w.analytic_verdict);
    r.details["density_defect"] = w.density_defect;
    const auto d = dual_decomposition_check(w);
    r.results.push_back(at_most("dual_decomposition_orthogonality", d.orthogonality_gap, 1e-8));
  });

  suite(r, "basis", [&] {
    const BasisPair pair = schauder_basis(spec, LeftInverseChoice::dagger(), kDefaultBasisTerms, n);
    r.results.push_back(at_most("biorthogonality", biorthogonality_check(pair), 1e-8));
  });

  suite(r, "sections", [&] {
    if (fredholm_index(spec, n, config.tolerance) != -1) {
      throw Error(ErrorKind::IndexNotMinusOne, "sections need index -1");
    }
    const SectionModel model(spec, n);
    const auto grid = default_grid(model.disc(), config.grid);
    double worst = 0.0;
    for (cd lambda : grid) {
      const Section s = model.section(lambda);
      worst = std::max(worst, model.eigen_residual(s) / model.eigen_residual_bound(s));
    }
    r.results.push_back(at_most("eigen_residual_over_bound", worst, 1.0));
    const KernelMatrix k = model.kernel(grid);
    r.results.push_back(at_most("kernel_hermitian", k.hermitian_defect(), 1e-9));
    r.results.push_back(at_least("kernel_psd", k.min_eigenvalue(), -1e-8 * k.values.trace().real()));
    const auto it = model.intertwining_check(grid, kIntertwiningTrials, rng());
    r.results.push_back(at_most("intertwining_shift", it.shift_deviation, 1e-7));
    r.results.push_back(at_most("intertwining_division", it.division_deviation, 1e-7));
  });

  suite(r, "dilation", [&] {
    const auto d = symalg::dilation(pkg, 5);
    r.results.push_back(at_most("dilation_powers", d.max_residual(), 1e-9));
  });

  suite(r, "rewriter", [&] {
    const symalg::Evaluator ev(pkg);
    double worst = 0.0;
    for (int t = 0; t < kRewriterTrials; ++t) {
      worst = std::max(worst, symalg::soundness_deviation(symalg::random_expr(rng, 6), ev));
    }
    r.results.push_back(at_most("rewriter_soundness", worst, 1e-8));
  });

  if (std::holds_alternative<OperatorSpec::FailedWoldComposite>(spec->variant())) {
    suite(r, "failed_wold", [&] {
      const FailedWoldReport f = failed_wold_report(n);
      for (const auto& c : f.checks) r.results.push_back(c);
    });
  }
  return r;
}

Report cmd_reduce(const std::string& expr, const RunConfig& config) {
  Report r;
  r.command = "reduce";
  r.spec = nullptr;
  r.config = ojson::object();
  r.config["expression"] = expr;
  const symalg::Expr e = symalg::parse(expr);
  const symalg::NormalForm nf = symalg::normalize(e);
  r.details["normal_form"] = symalg::to_json(nf);
  r.details["in_commutator_ideal"] = symalg::in_commutator_ideal(nf);
  if (config.check_against) {
    const SpecPtr spec = load_spec(*config.check_against);
    r.spec = spec_to_json(*spec);
    const int length = std::max(e.word_length(), nf.word_length());
    const Index n = std::max(config.size, padded_size(spec, 16, length));
    r.config["size"] = n;
    const symalg::Evaluator ev(moore_penrose(spec, n, config.tolerance));
    r.results.push_back(at_most("normal_form_matches_direct", symalg::soundness_deviation(e, ev), 1e-8));
  }
  return r;
}

Report cmd_kernel(const RunConfig& config) {
  seed_check(config);
  SpecPtr spec;
  Report r = start("kernel", config, spec);
  const SectionModel model(spec, config.size);
  const auto grid = default_grid(model.disc(), config.grid);
  const KernelMatrix k = model.kernel(grid);
  const auto path = output_path(config, "kernel.csv");
  std::ofstream out(path);
  write_kernel_csv(out, k);
  r.details["csv"] = path.filename().string();
  r.details["radius"] = model.disc().radius;
  r.results.push_back(at_most("kernel_hermitian", k.hermitian_defect(), 1e-9));
  r.results.push_back(at_least("kernel_psd", k.min_eigenvalue(), -1e-8 * k.values.trace().real()));
  return r;
}

Report cmd_basis(const RunConfig& config) {
  seed_check(config);
  SpecPtr spec;
  Report r = start("basis", config, spec);
  const int terms = config.depth > 0 ? config.depth : kDefaultBasisTerms;
  const BasisPair pair = schauder_basis(spec, LeftInverseChoice::dagger(), terms, config.size);
  const auto path = output_path(config, "basis.csv");
  std::ofstream out(path);
  write_basis_csv(out, pair);
  r.details["csv"] = path.filename().string();
  r.results.push_back(at_most("biorthogonality", biorthogonality_check(pair), 1e-8));
  return r;
}

Report cmd_wold(const RunConfig& config) {
  seed_check(config);
  SpecPtr spec;
  Report r = start("wold", config, spec);
  const int depth = config.depth > 0 ? config.depth : kDefaultWoldDepth;
  const WoldReport w = wold_subspaces(spec, config.size, depth);
  r.details["analytic_verdict"] = to_string(w.analytic_verdict);
  r.details["density_defect"] = w.density_defect;
  r.details["density_defect_half"] = w.density_defect_half;
  r.details["probe_window"] = w.probe_window;
  r.details["dim_h_i"] = w.h_i_basis.cols();
  r.details["dim_h_a"] = w.h_a_basis.cols();
  r.details["dim_h_a_prime"] = w.h_a_prime_basis.cols();
  r.details["min_principal_angle_i_a"] = w.min_principal_angle_i_a;
  const auto d = dual_decomposition_check(w);
  r.results.push_back(at_most("dual_decomposition_orthogonality", d.orthogonality_gap, 1e-8));
  r.details["completeness_gap"] = d.completeness_gap;
  if (std::holds_alternative<OperatorSpec::FailedWoldComposite>(spec->variant())) {
    const FailedWoldReport f = failed_wold_report(config.size);
    for (const auto& c : f.checks) r.results.push_back(c);
    r.details["gram_diagonal"] = f.gram_diagonal;
    r.details["index"] = f.index;
  }
  return r;
}

}  // namespace leftinv::cli
