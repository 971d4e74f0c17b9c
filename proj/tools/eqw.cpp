// eqw: command line front end.
#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "eqw/cli.hpp"

namespace {

struct Sub {
  CLI::App* app;
  eqw::cli::Command command;
  std::map<std::string, std::string> values;
  std::vector<std::string> grid;
  std::string input;
  std::string output;
  std::string csv;
};

void add_param(Sub& sub, const std::string& key, const std::string& help) {
  sub.app->add_option_function<std::string>(
      "--" + key, [&sub, key](const std::string& v) { sub.values[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pade and Prony interpolation by equal-weight exponential sums"};
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Sub>> subs;
  auto make = [&](eqw::cli::Command c, const std::string& help) -> Sub& {
    auto sub = std::make_unique<Sub>();
    sub->command = c;
    sub->app = app.add_subcommand(std::string(eqw::cli::to_string(c)), help);
    sub->app->add_option("--out,-o", sub->output, "write the JSON result here instead of stdout");
    subs.push_back(std::move(sub));
    return *subs.back();
  };
  auto add_solver_flags = [](Sub& s) {
    add_param(s, "tol", "root residual tolerance (default 1e-12)");
    add_param(s, "max-iter", "root finder iteration cap (default 500)");
    add_param(s, "precision", "double or adaptive (default adaptive)");
  };

  Sub& pade = make(eqw::cli::Command::Pade, "Pade interpolation at z = 0");
  // --h names the kernel here, so help is --help only
  pade.app->set_help_flag("--help", "print this help message and exit");
  pade.app->add_option("--f", pade.input, "Taylor series of f (JSON)")->required();
  add_param(pade, "h", "kernel: exp, geometric or a JSON Taylor series (default exp)");
  add_param(pade, "h-radius", "trusted radius of a Taylor kernel");
  add_param(pade, "n", "number of terms (default: n of the f document)");
  pade.app->add_option("--csv", pade.csv, "export nodes as CSV");
  add_solver_flags(pade);

  Sub& prony = make(eqw::cli::Command::Prony, "equal-weight Prony interpolation of a table");
  prony.app->add_option("--table", prony.input, "table g(0)..g(n) (JSON)")->required();
  prony.app->add_option("--grid", prony.grid, "interpolate on a + (b-a)m/n")->expected(2);
  prony.app->add_option("--csv", prony.csv, "export bases as CSV");
  add_solver_flags(prony);

  Sub& classical = make(eqw::cli::Command::PronyClassical, "classical weighted Prony solver");
  classical.app->add_option("--moments", classical.input, "moments s_0..s_(2n-1) (JSON)")->required();
  add_param(classical, "rank-tol", "Hankel rank threshold (default 1e-10)");
  add_param(classical, "sep-tol", "root separation threshold (default 1e-6)");
  add_param(classical, "residual-tol", "moment residual threshold (default 1e-8)");
  add_param(classical, "tol", "root residual tolerance (default 1e-12)");
  add_param(classical, "max-iter", "root finder iteration cap (default 500)");

  Sub& cheb = make(eqw::cli::Command::ChebNodes, "equal-weight Chebyshev quadrature nodes");
  add_param(cheb, "n", "number of nodes");
  add_param(cheb, "variant", "standard or shifted (default standard)");
  cheb.app->add_option("--csv", cheb.csv, "export nodes as CSV");
  add_solver_flags(cheb);

  Sub& quad = make(eqw::cli::Command::Quadrature, "apply the Chebyshev rule to a kernel");
  add_param(quad, "n", "number of nodes");
  add_param(quad, "variant", "standard or shifted (default standard)");
  add_param(quad, "kernel", "exp, cos, sin or monomial:<d> (default exp)");
  add_param(quad, "x", "half width (standard) or length (shifted) of the interval (default 1)");
  quad.app->add_option("--csv", quad.csv, "export nodes as CSV");
  add_solver_flags(quad);

  Sub& diff = make(eqw::cli::Command::DiffFormula, "numerical differentiation formula");
  add_param(diff, "t", "scale parameter t >= 1");
  add_param(diff, "n", "number of nodes");
  diff.app->add_option("--csv", diff.csv, "export nodes as CSV");
  add_solver_flags(diff);

  Sub& verify = make(eqw::cli::Command::VerifyBounds, "randomized check of the node bound");
  add_param(verify, "n", "problem size");
  add_param(verify, "a", "moment growth a (default 1)");
  add_param(verify, "trials", "number of trials (default 1000)");
  add_param(verify, "seed", "PRNG seed (default 42)");
  add_param(verify, "exec", "serial, parallel or auto (default auto)");

  Sub& eps = make(eqw::cli::Command::Eps, "solve the epsilon_n equation");
  add_param(eps, "n", "n >= 2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? eqw::cli::kExitOk : eqw::cli::kExitInput;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    eqw::cli::JobSpec spec{sub->command, sub->values, std::nullopt, std::nullopt, std::nullopt};
    if (!sub->grid.empty())
      spec.parameters["grid"] = sub->grid[0] + " " + sub->grid[1];
    if (!sub->input.empty()) spec.input_path = sub->input;
    if (!sub->output.empty()) spec.output_path = sub->output;
    if (!sub->csv.empty()) spec.csv_path = sub->csv;
    return eqw::cli::run(spec, std::cout, std::cerr);
  }
  return eqw::cli::kExitInput;
}
