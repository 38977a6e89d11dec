#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "leftinv/cli.hpp"
#include "leftinv/families.hpp"
#include "leftinv/spec_io.hpp"

namespace leftinv::cli {
namespace {

void add_common(CLI::App* cmd, RunConfig& c, bool needs_spec) {
  auto* spec = cmd->add_option("--spec", c.spec_path, "operator spec JSON file");
  if (needs_spec) spec->required();
  cmd->add_option("--size", c.size, "truncation size n (>= 16)")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for random trials")->capture_default_str();
  cmd->add_option("--out", c.output_dir, "output directory for reports and CSV files");
}

void write_report(const Report& r, const RunConfig& c, std::ostream& out) {
  const std::string text = r.to_json().dump(2);
  out << text << '\n';
  if (c.output_dir) {
    std::filesystem::create_directories(*c.output_dir);
    std::ofstream file(*c.output_dir / (r.command + "_report.json"));
    file << text << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moore-Penrose, Schauder basis and analytic-model workbench for left-invertible operators"};
  app.require_subcommand(1);
  RunConfig config;
  std::string expression;
  std::string family_name;

  auto* verify = app.add_subcommand("verify", "run every applicable invariant suite on a spec");
  add_common(verify, config, true);
  verify->add_option("--grid", config.grid, "number of section grid points")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "print the normal form of an expression in T, Td, P, I");
  reduce->add_option("expression", expression, "expression text")->required();
  reduce->add_option("--check-against", config.check_against,
                     "spec file for the numeric equivalence oracle");
  reduce->add_option("--size", config.size, "minimum truncation size")->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "export the reproducing kernel on the default grid");
  add_common(kernel, config, true);
  kernel->add_option("--grid", config.grid, "number of grid points")->capture_default_str();

  auto* basis = app.add_subcommand("basis", "export the Schauder basis and its dual");
  add_common(basis, config, true);
  basis->add_option("--depth", config.depth, "number of basis vectors (default 20)");

  auto* wold = app.add_subcommand("wold", "Wold-type subspaces and the analyticity verdict");
  add_common(wold, config, true);
  wold->add_option("--depth", config.depth, "orbit depth (default 16)");

  auto* family = app.add_subcommand("family", "print the spec JSON of a built-in family");
  family->add_option("name", family_name, "family name; omit to list the families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInvalidInput;
  }

  try {
    config.tolerance = tolerance_from_environment();
    if (*family) {
      if (family_name.empty()) {
        for (const auto& f : builtin_families()) out << f.name << '\n';
      } else {
        out << spec_to_json(*builtin_family(family_name).spec).dump(2) << '\n';
      }
      return kPass;
    }
    Report report;
    if (*reduce) {
      report = cmd_reduce(expression, config);
      out << report.details["normal_form"].dump() << '\n';
      if (!config.check_against) return kPass;
    } else if (*verify) {
      report = cmd_verify(config);
    } else if (*kernel) {
      report = cmd_kernel(config);
    } else if (*basis) {
      report = cmd_basis(config);
    } else {
      report = cmd_wold(config);
    }
    write_report(report, config, out);
    return report.pass() ? kPass : kToleranceFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace leftinv::cli
