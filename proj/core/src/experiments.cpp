#include "hpt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "descent.hpp"
#include "hpt/critical.hpp"
#include "hpt/ensemble.hpp"
#include "hpt/parallel.hpp"
#include "hpt/serialize.hpp"
#include "hpt/stencil.hpp"

namespace hpt {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_mass(double mass, double length) {
  if (!(std::abs(mass) < length))
    throw std::invalid_argument("mass constraint must lie in (-|I|, |I|)");
}

}  // namespace

EnergyMinimum minimize_energy(const Field& init, const EnergyParams& p, const DoubleWell& w,
                              const EnergyMinimizeOptions& opts) {
  p.validate();
  const Grid& g = init.grid();
  const DiscreteFunctional functional(g, p.n, w);
  const TermWeights weights = energy_weights(p);

  std::vector<double> x0(init.values().begin(), init.values().end());
  detail::Constraints constraints;
  if (opts.mass) {
    check_mass(*opts.mass, g.length());
    const auto q = functional.node_weights();
    constraints.mass_weights.assign(q.begin(), q.end());
    double current = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      current += q[i] * x0[i];
      total += q[i];
    }
    const double shift = (*opts.mass - current) / total;
    for (double& v : x0) v += shift;
  }

  Objective objective;
  objective.value_and_gradient = [&](std::span<const double> u, std::span<double> grad) {
    const double v = functional.value_and_gradient(u, weights, grad);
    detail::project(grad, constraints);
    return v;
  };
  objective.precondition = detail::make_preconditioner(functional, weights.highest,
                                                       weights.potential * w.well_curvature(), constraints);

  EnergyMinimum out{Field(g), {}, 0.0, LbfgsStatus::max_iterations, 0, 0.0, false, false, ""};
  std::vector<double> scratch(x0.size());
  out.initial_energy = functional.value_and_gradient(x0, weights, scratch);

  LbfgsOptions lbfgs = opts.lbfgs;
  lbfgs.value_floor = std::max(lbfgs.value_floor, opts.divergence_floor);
  LbfgsResult r = minimize_lbfgs(objective, std::move(x0), lbfgs);

  out.minimizer = Field(g, std::move(r.x));
  out.breakdown = functional.breakdown(out.minimizer.values(), weights);
  out.status = r.status;
  out.iterations = r.iterations;
  out.gradient_norm = r.gradient_norm;
  out.converged = r.converged();
  out.diverged = r.status == LbfgsStatus::diverged;
  if (out.diverged)
    out.diagnosis = "supercritical divergence";
  else if (!out.converged)
    out.diagnosis = "stopped with status " + to_string(r.status);
  return out;
}

int sign_changes(const Field& u, double zero_tol) {
  int count = 0;
  int last = 0;
  for (double v : u.values()) {
    if (std::abs(v) <= zero_tol) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::size_t count_jumps(const Field& u, double merge_distance) {
  const auto v = u.values();
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const bool left = v[i] >= 0.0;
    const bool right = v[i + 1] >= 0.0;
    if (left != right) {
      const double t = v[i] / (v[i] - v[i + 1]);
      crossings.push_back(u.grid().node(i) + t * u.grid().spacing());
    }
  }
  std::size_t clusters = 0;
  for (std::size_t i = 0; i < crossings.size(); ++i)
    if (i == 0 || crossings[i] - crossings[i - 1] >= merge_distance) ++clusters;
  return clusters;
}

double l1_distance(const Field& u, const JumpFunction& v) {
  const Grid& g = u.grid();
  const auto q = quadrature_weights(g);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) sum += q[i] * std::abs(u[i] - v(g.node(i)));
  return sum;
}

std::vector<double> geometric_schedule(double first, int count) {
  std::vector<double> eps;
  for (int i = 0; i < count; ++i) eps.push_back(first * std::ldexp(1.0, -i));
  return eps;
}

void SweepConfig::validate() const {
  if (n < 2) throw std::invalid_argument("sweep order n must be >= 2");
  jumps.validate();
  if (epsilons.empty()) throw std::invalid_argument("epsilon schedule is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw std::invalid_argument("epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw std::invalid_argument("epsilon schedule must be strictly decreasing");
  }
  if (mass) check_mass(*mass, jumps.b - jumps.a);
  if (!(points_per_epsilon > 0.0)) throw std::invalid_argument("points_per_epsilon must be positive");
  if (lambda_fraction && !(*lambda_fraction >= 0.0)) throw std::invalid_argument("lambda_fraction must be >= 0");
}

std::string config_hash(const SweepConfig& cfg) {
  json j = cfg;
  j.erase("output_path");
  j.erase("threads");
  const std::string canonical = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

RunRecord gamma_sweep(const SweepConfig& cfg) {
  cfg.validate();
  RunRecord rec;
  rec.started_at = utc_now();
  rec.config_hash = config_hash(cfg);
  rec.config_json = json(cfg).dump();
  rec.jump_count = cfg.jumps.count();
  const DoubleWell w = potential_by_name(cfg.potential);

  rec.lambda_hat = cfg.lambda_hat;
  if (cfg.lambda_fraction) {
    if (!(rec.lambda_hat > 0.0)) {
      LambdaOptions lo;
      lo.starts = cfg.lambda_starts;
      lo.num_points = cfg.lambda_points;
      lo.seed = cfg.seed;
      lo.threads = cfg.threads;
      rec.lambda_hat = estimate_lambda_n(cfg.n, w, lo).lambda_hat;
    }
    rec.lambda = *cfg.lambda_fraction * rec.lambda_hat;
  } else {
    rec.lambda = cfg.lambda;
  }

  ProfileProblem prob;
  prob.n = cfg.n;
  prob.lam = rec.lambda;
  prob.truncation_T = cfg.profile_T;
  prob.num_points = cfg.profile_points;
  prob.potential = w;
  ProfileOptions popts;
  popts.threads = cfg.threads;
  const ProfileResult profile = minimize_profile(prob, popts);
  rec.c_hat = profile.energy_estimate;
  if (!profile.converged) rec.flags.push_back("profile: " + profile.diagnosis);

  const std::size_t m = cfg.epsilons.size();
  rec.rows.resize(m);
  std::vector<std::optional<Field>> recoveries(m);
  for (std::size_t i = 0; i < m; ++i) {
    SweepRow& row = rec.rows[i];
    row.epsilon = cfg.epsilons[i];
    try {
      Field r = build_recovery(cfg.jumps, profile.minimizer, row.epsilon, cfg.points_per_epsilon);
      row.E_recovery = evaluate(r, EnergyParams{cfg.n, row.epsilon, rec.lambda}, w).total;
      row.l1_recovery = l1_distance(r, cfg.jumps);
      recoveries[i] = std::move(r);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  const double reference = recoveries[0] ? std::max(rec.rows[0].E_recovery, 1.0) : 1.0;
  const double floor = -1e3 * reference;

  parallel_for(m, cfg.threads, [&](std::size_t i) {
    SweepRow& row = rec.rows[i];
    if (!recoveries[i]) return;
    const double merge = 2.0 * row.epsilon * cfg.profile_T;
    if (!cfg.minimize) {
      row.E_min = row.E_recovery;
      row.converged = true;
      row.status = "not_minimized";
      row.jumps_detected = count_jumps(*recoveries[i], merge);
      return;
    }
    try {
      EnergyMinimizeOptions mo;
      mo.mass = cfg.mass;
      mo.lbfgs.max_iterations = cfg.max_iterations;
      mo.divergence_floor = floor;
      const EnergyMinimum em =
          minimize_energy(*recoveries[i], EnergyParams{cfg.n, row.epsilon, rec.lambda}, w, mo);
      row.E_min = em.breakdown.total;
      row.converged = em.converged;
      row.status = to_string(em.status);
      row.iterations = em.iterations;
      row.jumps_detected = count_jumps(em.minimizer, merge);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  const double target = static_cast<double>(rec.jump_count) * rec.c_hat;
  double prev_dev = -1.0;
  for (const SweepRow& row : rec.rows) {
    std::ostringstream eps;
    eps << row.epsilon;
    if (!row.error.empty()) {
      rec.flags.push_back("eps=" + eps.str() + ": " + row.error);
      continue;
    }
    if (cfg.minimize && !cfg.mass && row.E_min > row.E_recovery + 1e-9 * std::max(1.0, std::abs(row.E_recovery)))
      rec.flags.push_back("eps=" + eps.str() + ": E_min exceeds E_recovery");
    const double dev = std::abs(row.E_recovery - target);
    if (prev_dev >= 0.0 && dev > prev_dev) rec.flags.push_back("eps=" + eps.str() + ": recovery deviation increased");
    prev_dev = dev;
  }
  rec.finished_at = utc_now();
  if (!cfg.output_path.empty()) write_run(rec, cfg.output_path);
  return rec;
}

void write_rows_csv(std::ostream& out, const RunRecord& rec) {
  out << "epsilon,E_min,E_recovery,jumps_detected,converged\n";
  out << std::setprecision(17);
  for (const SweepRow& r : rec.rows)
    out << r.epsilon << ',' << r.E_min << ',' << r.E_recovery << ',' << r.jumps_detected << ','
        << (r.converged ? "true" : "false") << '\n';
}

void write_run(const RunRecord& rec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream js(dir / "run.json");
  js << json(rec).dump(2) << '\n';
  std::ofstream csv(dir / "rows.csv");
  write_rows_csv(csv, rec);
  if (!js || !csv) throw std::runtime_error("failed to write run files to " + dir.string());
}

SupercriticalReport supercritical_probe(int n, const std::vector<double>& lambda_grid, double eps,
                                        const DoubleWell& w, const SupercriticalOptions& opts) {
  EnergyParams base{n, eps, 0.0};
  base.validate();
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1]))
      throw std::invalid_argument("lambda grid must be strictly increasing");
  if (opts.k_max < 1) throw std::invalid_argument("k_max must be >= 1");

  const Grid g = Grid::with_density(0.0, opts.interval_length, opts.points_per_epsilon / eps,
                                    DiffOperator::min_points(n));
  const DiscreteFunctional functional(g, n, w);
  const double len = opts.interval_length;

  std::vector<Field> candidates;
  candidates.emplace_back(g, 1.0);
  for (int k = 1; k <= opts.k_max; ++k)
    candidates.push_back(Field::sample(g, [&](double x) {
      return std::clamp(opts.amplitude * std::sin(2.0 * std::numbers::pi * k * x / len), -1.0, 1.0);
    }));
  std::vector<RawIntegrals> raw;
  std::vector<int> changes;
  for (const Field& c : candidates) {
    raw.push_back(functional.integrals(c.values()));
    changes.push_back(sign_changes(c));
  }

  SupercriticalReport rep;
  rep.n = n;
  rep.epsilon = eps;
  rep.rows.resize(lambda_grid.size());
  for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
    SupercriticalRow& row = rep.rows[li];
    row.lambda = lambda_grid[li];
    const TermWeights c = energy_weights(EnergyParams{n, eps, row.lambda});
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const double e = c.potential * raw[k].potential - c.lower * raw[k].lower + c.highest * raw[k].highest;
      row.candidate_energies.push_back(e);
      if (k == 0 || e < row.best_energy) {
        row.best_energy = e;
        row.best_k = static_cast<int>(k);
      }
    }
    row.best_sign_changes = changes[row.best_k];
  }

  if (opts.free_minimization) {
    parallel_for(rep.rows.size(), opts.threads, [&](std::size_t li) {
      SupercriticalRow& row = rep.rows[li];
      EnergyMinimizeOptions mo;
      mo.lbfgs.max_iterations = opts.free_iterations;
      mo.divergence_floor = opts.divergence_floor;
      const EnergyMinimum em = minimize_energy(candidates[row.best_k], EnergyParams{n, eps, row.lambda}, w, mo);
      row.free_energy = em.breakdown.total;
      row.free_sign_changes = sign_changes(em.minimizer);
      row.free_status = to_string(em.status);
    });
  }

  for (std::size_t li = 0; li < rep.rows.size(); ++li) {
    const SupercriticalRow& row = rep.rows[li];
    if (!rep.onset_lambda && row.best_energy < 0.0) rep.onset_lambda = row.lambda;
    if (li > 0) {
      rep.energy_monotone = rep.energy_monotone && row.best_energy <= rep.rows[li - 1].best_energy;
      rep.sign_changes_monotone =
          rep.sign_changes_monotone && row.best_sign_changes >= rep.rows[li - 1].best_sign_changes;
    }
  }
  return rep;
}

Field make_initial_field(const MinimizeConfig& cfg) {
  cfg.params.validate();
  const double eps = cfg.params.epsilon;
  const Grid g = Grid::with_density(cfg.a, cfg.b, cfg.points_per_epsilon / eps,
                                    DiffOperator::min_points(cfg.params.n));
  const InitSpec& s = cfg.init;
  if (s.type == "constant") return Field(g, s.value);
  if (s.type == "sine")
    return Field::sample(g, [&](double x) {
      return s.amplitude * std::sin(2.0 * std::numbers::pi * s.k * (x - cfg.a) / (cfg.b - cfg.a));
    });
  if (s.type == "random") return sample_on(ensemble_sample(s.seed, 0), g);
  if (s.type == "jumps") {
    JumpFunction u = s.jumps;
    u.a = cfg.a;
    u.b = cfg.b;
    u.validate();
    return Field::sample(g, [&](double x) {
      if (u.jumps.empty()) return static_cast<double>(u.left_value);
      const auto it = std::lower_bound(u.jumps.begin(), u.jumps.end(), x);
      std::size_t k = static_cast<std::size_t>(it - u.jumps.begin());
      if (k == u.jumps.size() || (k > 0 && x - u.jumps[k - 1] < u.jumps[k] - x)) --k;
      const double orientation = u.value_on(k) == -1 ? 1.0 : -1.0;
      return orientation * std::tanh((x - u.jumps[k]) / eps);
    });
  }
  throw std::invalid_argument("unknown init type '" + s.type + "' (jumps, sine, constant, random)");
}

}  // namespace hpt
