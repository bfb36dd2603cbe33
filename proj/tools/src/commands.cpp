#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "hpt/critical.hpp"
#include "hpt/ensemble.hpp"
#include "hpt/experiments.hpp"
#include "hpt/hermite.hpp"
#include "hpt/inequalities.hpp"
#include "hpt/potential.hpp"
#include "hpt/profile.hpp"
#include "hpt/serialize.hpp"

namespace hpt::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_dir(const std::string& dir) {
  const fs::path p(dir);
  fs::create_directories(p);
  return p;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

void write_field_file(const fs::path& path, const Field& field) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  write_csv(f, field);
}

json read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path + " is not valid JSON: " + e.what());
  }
}

}  // namespace

int run_hermite(const HermiteOptions& o, std::ostream& out) {
  if (static_cast<int>(o.y.size()) != o.n)
    throw std::invalid_argument("--y has " + std::to_string(o.y.size()) + " entries, expected n = " +
                                std::to_string(o.n));
  const BoundaryData y{o.y};
  const CouplingKind kind = coupling_kind_from_string(o.kind);
  const CouplingPolynomial p = kind == CouplingKind::zeta ? solve_zeta(y) : solve_eta(y);
  json j = p;
  j["y"] = o.y;
  j["endpoint_residual"] = endpoint_residual(p, y);
  out << j.dump(2) << '\n';
  return 0;
}

int run_profile(const ProfileOptions& o, std::ostream& out) {
  const DoubleWell w = potential_by_name(o.potential);
  ConstantsOptions co;
  co.truncation_T = o.T;
  co.num_points = o.points;
  co.lambda_hat = o.lambda_hat;
  co.profile.threads = o.threads;
  const ConstantsEstimate e = estimate_constants(o.n, o.lambda, w, co);

  const fs::path dir = prepare_dir(o.out_dir);
  const fs::path csv = dir / "profile_minimizer.csv";
  write_field_file(csv, e.at_lam.minimizer);

  json j{{"n", o.n},
         {"lambda", o.lambda},
         {"potential", o.potential},
         {"T", o.T},
         {"points", o.points},
         {"C_hat_0", e.C_hat_0},
         {"C_hat_lam", e.C_hat_lam},
         {"minimizer_csv_path", csv.string()},
         {"diagnostics", e}};
  out << j.dump(2) << '\n';
  return e.at_lam.converged ? 0 : 2;
}

int run_lambda_n(const LambdaOptions& o, std::ostream& out) {
  const DoubleWell w = potential_by_name(o.potential);
  hpt::LambdaOptions lo;
  lo.starts = o.starts;
  lo.num_points = o.points;
  lo.seed = o.seed;
  lo.threads = o.threads;
  const LambdaEstimate e = estimate_lambda_n(o.n, w, lo);

  const fs::path dir = prepare_dir(o.out_dir);
  const fs::path csv = dir / "lambda_argmin.csv";
  write_field_file(csv, e.argmin.argmin_field);

  json j{{"n", o.n},
         {"potential", o.potential},
         {"starts", o.starts},
         {"seed", o.seed},
         {"lambda_hat", e.lambda_hat},
         {"argmin_csv_path", csv.string()},
         {"diagnostics", e}};
  out << j.dump(2) << '\n';
  return 0;
}

int run_check_ineq(const CheckOptions& o, std::ostream& out) {
  static const std::set<std::string> kinds{"intlem", "nirineq", "gagnir", "abstr", "lowerbound"};
  if (!kinds.count(o.which))
    throw std::invalid_argument("unknown --which '" + o.which +
                                "' (expected intlem, nirineq, gagnir, abstr or lowerbound)");
  if (o.count == 0) throw std::invalid_argument("--count must be positive");

  const DoubleWell w = make_quartic();
  EnsembleOptions eo;
  eo.random_intervals = o.which == "intlem" || o.which == "abstr";

  json params;
  std::function<CheckReport(const Field&)> check;
  GagNirTracker tracker;
  if (o.which == "intlem") {
    params = {{"p", o.p}, {"q", o.q}, {"r", o.r}, {"constant", intlem_constant(o.q)}};
    check = [&](const Field& u) { return check_intlem(u, o.p, o.q, o.r); };
  } else if (o.which == "nirineq") {
    params = {{"n", o.n}, {"sigma", o.sigma}, {"c_probe", o.probe}};
    check = [&](const Field& u) { return check_nirineq(u, o.n, o.sigma, o.probe); };
  } else if (o.which == "gagnir") {
    const GNParams gp = GNParams::liminf_family(o.n, o.k);
    params = {{"gn", gp}, {"c_hat", o.probe}};
    check = [gp, &o](const Field& u) { return check_gagnir_interval(u, gp, o.probe); };
  } else if (o.which == "abstr") {
    params = {{"j", o.k}, {"m", o.n}, {"q", o.q}, {"r", o.r}, {"c_probe", o.probe}};
    check = [&](const Field& u) { return check_abstr(u, o.k, o.n, o.q, o.r, o.probe); };
  } else {
    double lam_hat = o.lambda_hat;
    if (!(lam_hat > 0.0)) lam_hat = estimate_lambda_n(o.n, w).lambda_hat;
    const EnergyParams ep{o.n, o.epsilon, o.lambda_fraction * lam_hat};
    params = {{"n", o.n},     {"epsilon", o.epsilon}, {"lambda", ep.lambda},
              {"lambda_hat", lam_hat}, {"delta", o.delta}};
    check = [ep, lam_hat, &o, &w](const Field& u) { return check_lower_bound_lemma(u, ep, lam_hat, o.delta, w); };
  }

  // nirineq reports the smallest admissible constant, the others the largest.
  const bool minimize_constant = o.which == "nirineq";
  std::size_t failures = 0;
  std::size_t worst = 0;
  CheckReport worst_report;
  Field worst_field{Grid(0.0, 1.0, 2)};
  double extreme = minimize_constant ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < o.count; ++i) {
    std::string description;
    const Field u = ensemble_field(o.seed, i, o.points, eo, &description);
    CheckReport rep = check(u);
    rep.witness = "ensemble[" + std::to_string(i) + "] " + description;
    if (!rep.pass) ++failures;
    if (o.which == "gagnir") tracker.add(rep);
    const bool better = minimize_constant ? rep.required_constant < extreme
                                          : (o.which == "lowerbound" ? rep.ratio > worst_report.ratio
                                                                     : rep.required_constant > extreme);
    if (i == 0 || better) {
      extreme = rep.required_constant;
      worst = i;
      worst_report = rep;
      worst_field = u;
    }
  }

  const fs::path dir = prepare_dir(o.out_dir);
  const fs::path csv = dir / ("witness_" + o.which + ".csv");
  write_field_file(csv, worst_field);

  json j{{"which", o.which},
         {"seed", o.seed},
         {"count", o.count},
         {"points", o.points},
         {"parameters", params},
         {"failures", failures},
         {"verdict", failures == 0 ? "pass" : "empirical constant exceeds probe"},
         {"worst_index", worst},
         {"worst", worst_report},
         {"witness_csv_path", csv.string()}};
  if (o.which != "lowerbound") j["empirical_constant"] = extreme;
  if (o.which == "gagnir") {
    j["max_required"] = tracker.max_required();
    j["unbounded_growth"] = tracker.unbounded_growth();
  }
  out << j.dump(2) << '\n';
  return failures > 0 && o.which == "intlem" ? 2 : 0;
}

int run_minimize(const RunOptions& o, std::ostream& out) {
  MinimizeConfig cfg = read_config(o.config_path).get<MinimizeConfig>();
  if (o.seed) cfg.init.seed = *o.seed;
  const DoubleWell w = potential_by_name(cfg.potential);
  const Field init = make_initial_field(cfg);

  EnergyMinimizeOptions mo;
  mo.mass = cfg.mass;
  mo.lbfgs.max_iterations = cfg.max_iterations;
  mo.divergence_floor = cfg.divergence_floor;
  const EnergyMinimum m = minimize_energy(init, cfg.params, w, mo);

  const fs::path dir = prepare_dir(o.out_dir);
  const fs::path csv = dir / "minimizer.csv";
  write_field_file(csv, m.minimizer);
  json j{{"config", cfg}, {"result", m}, {"minimizer_csv_path", csv.string()}};
  j["result"]["sign_changes"] = sign_changes(m.minimizer);
  write_json_file(dir / "minimize.json", j);
  out << j.dump(2) << '\n';
  return m.converged ? 0 : 2;
}

int run_gamma_sweep(const RunOptions& o, std::ostream& out) {
  SweepConfig cfg = read_config(o.config_path).get<SweepConfig>();
  if (o.seed) cfg.seed = *o.seed;
  cfg.threads = o.threads;
  cfg.output_path = prepare_dir(o.out_dir).string();
  const RunRecord rec = gamma_sweep(cfg);
  out << json(rec).dump(2) << '\n';
  const bool all_ok = std::all_of(rec.rows.begin(), rec.rows.end(), [](const SweepRow& r) { return r.error.empty(); });
  return all_ok ? 0 : 2;
}

int run_supercritical(const RunOptions& o, std::ostream& out) {
  const json cfg = read_config(o.config_path);
  static const std::set<std::string> known{"n",           "epsilon",        "lambdas",          "potential",
                                           "interval_length", "k_max",     "amplitude",        "points_per_epsilon",
                                           "free_minimization", "free_iterations", "divergence_floor"};
  for (const auto& [key, value] : cfg.items())
    if (!known.count(key)) throw std::invalid_argument("unknown key '" + key + "' in supercritical config");
  if (!cfg.contains("lambdas")) throw std::invalid_argument("supercritical config needs 'lambdas'");

  SupercriticalOptions so;
  so.interval_length = cfg.value("interval_length", so.interval_length);
  so.k_max = cfg.value("k_max", so.k_max);
  so.amplitude = cfg.value("amplitude", so.amplitude);
  so.points_per_epsilon = cfg.value("points_per_epsilon", so.points_per_epsilon);
  so.free_minimization = cfg.value("free_minimization", so.free_minimization);
  so.free_iterations = cfg.value("free_iterations", so.free_iterations);
  so.divergence_floor = cfg.value("divergence_floor", so.divergence_floor);
  so.threads = o.threads;
  const int n = cfg.value("n", 2);
  const double eps = cfg.value("epsilon", 1.0 / 16.0);
  const auto lambdas = cfg.at("lambdas").get<std::vector<double>>();
  const DoubleWell w = potential_by_name(cfg.value("potential", std::string("quartic")));

  const SupercriticalReport rep = supercritical_probe(n, lambdas, eps, w, so);

  const fs::path dir = prepare_dir(o.out_dir);
  {
    std::ofstream f(dir / "supercritical.csv");
    if (!f) throw std::runtime_error("cannot write " + (dir / "supercritical.csv").string());
    f.precision(17);
    f << "lambda,best_k,best_energy,best_sign_changes,free_energy,free_sign_changes,free_status\n";
    for (const auto& r : rep.rows)
      f << r.lambda << ',' << r.best_k << ',' << r.best_energy << ',' << r.best_sign_changes << ','
        << r.free_energy << ',' << r.free_sign_changes << ',' << r.free_status << '\n';
  }
  json j{{"config", cfg}, {"report", rep}};
  // The probe has no random input; the seed is only recorded.
  if (o.seed) j["seed"] = *o.seed;
  write_json_file(dir / "supercritical.json", j);
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace hpt::cli
