#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "orlicz/cli.hpp"

namespace {

int emit(const orlicz::cli::CommandOutput& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong and weak Orlicz norms, coincidence criterion and embedding constants"};
  app.require_subcommand(1);

  std::string young, fn, kind = "both", mass, out = "json";
  auto* norm = app.add_subcommand("norm", "strong/weak/Lebesgue norm of a described function");
  norm->add_option("--young", young, "Young function, e.g. exp_m:2")->required();
  norm->add_option("--fn", fn, "function descriptor: JSON text or path to a JSON file")->required();
  norm->add_option("--kind", kind, "strong | weak | both | lp:<p>");
  norm->add_option("--mass", mass, "total mass, a positive number or inf");
  norm->add_option("--out", out, "json | csv");

  std::string report;
  auto* embed = app.add_subcommand("embed", "coincidence verdict and embedding constant k0");
  embed->add_option("--young", young, "Young function")->required();
  embed->add_option("--mass", mass, "total mass, a positive number or inf");
  embed->add_option("--report", report, "write the JSON report here instead of stdout");

  double alpha = 0;
  auto* gseries = app.add_subcommand("gseries", "G(alpha) by series and quadrature");
  gseries->add_option("--alpha", alpha, "alpha < 1")->required();

  double tol = 1e-10;
  auto* beta0 = app.add_subcommand("beta0", "root of G = 2");
  beta0->add_option("--tol", tol, "residual tolerance");

  std::string suite = "all", format = "json";
  std::uint64_t seed = orlicz::verify::default_seed;
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suite", suite, "all | norms | embedding | expfamily");
  verify->add_option("--seed", seed, "seed for the randomized property checks");
  verify->add_option("--format", format, "json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : orlicz::cli::input_error;
  }

  if (*norm) return emit(orlicz::cli::cmd_norm(young, fn, kind, mass, out));
  if (*embed) {
    auto r = orlicz::cli::cmd_embed(young, mass);
    if (!report.empty() && r.exit_code != orlicz::cli::input_error) {
      std::ofstream f(report);
      if (!f) {
        std::cerr << "error: cannot write report '" << report << "'\n";
        return orlicz::cli::input_error;
      }
      f << r.out;
      r.out.clear();
    }
    return emit(r);
  }
  if (*gseries) return emit(orlicz::cli::cmd_gseries(alpha));
  if (*beta0) return emit(orlicz::cli::cmd_beta0(tol));
  return emit(orlicz::cli::cmd_verify(suite, seed, format));
}
