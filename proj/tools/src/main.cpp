#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_run_options(CLI::App& cmd, hpt::cli::RunOptions& o) {
  cmd.add_option("config", o.config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  cmd.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--seed", o.seed, "Override the config seed");
  cmd.add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order phase transition toolkit"};
  app.require_subcommand(1);

  hpt::cli::HermiteOptions hermite;
  auto* h = app.add_subcommand("hermite", "Hermite coupling polynomial for boundary data");
  h->add_option("--n", hermite.n, "Order n (2..8)")->required();
  h->add_option("--y", hermite.y, "Boundary data y_0,...,y_{n-1}")->required()->delimiter(',');
  h->add_option("--kind", hermite.kind, "zeta or eta")
      ->capture_default_str()
      ->check(CLI::IsMember({"zeta", "eta"}));

  hpt::cli::ProfileOptions profile;
  auto* p = app.add_subcommand("profile", "Optimal profile constants C^n and C^{lambda,n}");
  p->add_option("--n", profile.n, "Order n")->capture_default_str();
  p->add_option("--lambda", profile.lambda, "lambda")->capture_default_str();
  p->add_option("--potential", profile.potential, "Built-in potential")->capture_default_str();
  p->add_option("--T", profile.T, "Truncation half-length")->capture_default_str();
  p->add_option("--points", profile.points, "Grid points on (-T, T)")->capture_default_str();
  p->add_option("--lambda-hat", profile.lambda_hat, "Critical constant estimate for the sandwich check");
  p->add_option("--out", profile.out_dir, "Output directory")->capture_default_str();
  p->add_option("--threads", profile.threads, "Worker threads")->capture_default_str();

  hpt::cli::LambdaOptions lambda;
  auto* l = app.add_subcommand("lambda-n", "Estimate the critical interpolation constant");
  l->add_option("--n", lambda.n, "Order n")->capture_default_str();
  l->add_option("--potential", lambda.potential, "Built-in potential")->capture_default_str();
  l->add_option("--starts", lambda.starts, "Multi-start count")->capture_default_str();
  l->add_option("--points", lambda.points, "Grid points on (0, 1)")->capture_default_str();
  l->add_option("--seed", lambda.seed, "Seed of the random starts")->capture_default_str();
  l->add_option("--out", lambda.out_dir, "Output directory")->capture_default_str();
  l->add_option("--threads", lambda.threads, "Worker threads")->capture_default_str();

  hpt::cli::CheckOptions check;
  auto* c = app.add_subcommand("check-ineq", "Stress an interpolation inequality on a seeded ensemble");
  c->add_option("--which", check.which, "intlem, nirineq, gagnir, abstr or lowerbound")
      ->required()
      ->check(CLI::IsMember({"intlem", "nirineq", "gagnir", "abstr", "lowerbound"}));
  c->add_option("--n", check.n, "Order n (m for abstr)")->capture_default_str();
  c->add_option("--seed", check.seed, "Ensemble seed")->capture_default_str();
  c->add_option("--count", check.count, "Ensemble size")->capture_default_str();
  c->add_option("--points", check.points, "Grid points per field")->capture_default_str();
  c->add_option("--p", check.p, "Exponent p (intlem)")->capture_default_str();
  c->add_option("--q", check.q, "Exponent q (intlem, abstr)")->capture_default_str();
  c->add_option("--r", check.r, "Exponent r (intlem, abstr)")->capture_default_str();
  c->add_option("--k", check.k, "Lower derivative order (gagnir, abstr)")->capture_default_str();
  c->add_option("--sigma", check.sigma, "sigma (nirineq)")->capture_default_str();
  c->add_option("--probe", check.probe, "Constant probe (nirineq, gagnir, abstr)")->capture_default_str();
  c->add_option("--lambda-fraction", check.lambda_fraction, "lambda / lambda_hat (lowerbound)")
      ->capture_default_str();
  c->add_option("--lambda-hat", check.lambda_hat, "Critical constant (lowerbound; estimated if omitted)");
  c->add_option("--delta", check.delta, "delta (lowerbound)")->capture_default_str();
  c->add_option("--epsilon", check.epsilon, "epsilon (lowerbound)")->capture_default_str();
  c->add_option("--out", check.out_dir, "Output directory")->capture_default_str();

  hpt::cli::RunOptions minimize;
  auto* m = app.add_subcommand("minimize", "Minimize the energy from a JSON config");
  add_run_options(*m, minimize);
  hpt::cli::RunOptions sweep;
  auto* g = app.add_subcommand("gamma-sweep", "Recovery and minimization over a decreasing epsilon schedule");
  add_run_options(*g, sweep);
  hpt::cli::RunOptions super;
  auto* s = app.add_subcommand("supercritical", "Oscillatory ansatz probe over a lambda grid");
  add_run_options(*s, super);

  CLI11_PARSE(app, argc, argv);

  try {
    if (h->parsed()) return hpt::cli::run_hermite(hermite, std::cout);
    if (p->parsed()) return hpt::cli::run_profile(profile, std::cout);
    if (l->parsed()) return hpt::cli::run_lambda_n(lambda, std::cout);
    if (c->parsed()) return hpt::cli::run_check_ineq(check, std::cout);
    if (m->parsed()) return hpt::cli::run_minimize(minimize, std::cout);
    if (g->parsed()) return hpt::cli::run_gamma_sweep(sweep, std::cout);
    if (s->parsed()) return hpt::cli::run_supercritical(super, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
