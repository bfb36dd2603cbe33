#include "hpt/serialize.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

namespace hpt {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) throw std::invalid_argument(std::string("unknown key '") + item.key() + "' in " + what);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

template <class T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null())
    out.reset();
  else
    out = j.at(key).get<T>();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void to_json(json& j, const Field& f) {
  j = json{{"a", f.grid().a()},
           {"b", f.grid().b()},
           {"num_points", f.grid().size()},
           {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

Field field_from_json(const json& j) {
  check_keys(j, {"a", "b", "num_points", "values"}, "field");
  auto values = j.at("values").get<std::vector<double>>();
  const auto n = j.contains("num_points") ? j.at("num_points").get<std::size_t>() : values.size();
  return Field(Grid(j.at("a").get<double>(), j.at("b").get<double>(), n), std::move(values));
}

void to_json(json& j, const EnergyBreakdown& b) {
  j = json{{"potential_term", b.potential_term},
           {"concave_term", b.concave_term},
           {"highest_term", b.highest_term},
           {"total", b.total}};
}

void to_json(json& j, const CouplingPolynomial& p) {
  std::vector<double> coefficients(p.coefficients.begin(), p.coefficients.end());
  j = json{{"kind", to_string(p.kind)}, {"n", p.n()}, {"coefficients", coefficients}};
}

void to_json(json& j, const CheckReport& r) {
  j = json{{"lhs", r.lhs},           {"rhs", r.rhs}, {"ratio", r.ratio}, {"pass", r.pass},
           {"required_constant", r.required_constant}, {"witness", r.witness}};
}

void to_json(json& j, const GNParams& gp) {
  j = json{{"p", gp.p}, {"q", gp.q}, {"r", gp.r}, {"j", gp.j}, {"m", gp.m}, {"theta", gp.theta}};
}

void to_json(json& j, const ProfileRun& r) {
  j = json{{"start", r.start},
           {"initial_energy", r.initial_energy},
           {"energy", r.energy},
           {"status", to_string(r.status)},
           {"iterations", r.iterations},
           {"gradient_norm", r.gradient_norm}};
}

void to_json(json& j, const ProfileResult& r) {
  j = json{{"energy_estimate", r.energy_estimate},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"gradient_norm_final", r.gradient_norm_final},
           {"status", r.status},
           {"diagnosis", r.diagnosis},
           {"best_start", r.best_start},
           {"grid", {{"a", r.minimizer.grid().a()}, {"b", r.minimizer.grid().b()}, {"num_points", r.minimizer.size()}}},
           {"runs", r.runs}};
}

void to_json(json& j, const ConstantsEstimate& e) {
  j = json{{"C_hat_0", e.C_hat_0},
           {"C_hat_lam", e.C_hat_lam},
           {"sandwich_checked", e.sandwich_checked},
           {"sandwich_ok", e.sandwich_ok},
           {"sandwich_lower", e.sandwich_lower},
           {"sandwich_upper", e.sandwich_upper},
           {"at_zero", e.at_zero},
           {"at_lam", e.at_lam}};
}

void to_json(json& j, const QuotientRun& r) {
  j = json{{"start", r.start},        {"initial", r.initial},       {"value", r.value},
           {"status", to_string(r.status)}, {"iterations", r.iterations}, {"error", r.error}};
}

void to_json(json& j, const LambdaEstimate& e) {
  j = json{{"lambda_hat", e.lambda_hat},
           {"best_start", e.best_start},
           {"potential_part", e.argmin.potential_part},
           {"highest_part", e.argmin.highest_part},
           {"denominator", e.argmin.denominator},
           {"runs", e.runs}};
}

void to_json(json& j, const SubcriticalReport& r) {
  j = json{{"lambda", r.lam},
           {"checked", r.checked},
           {"skipped_degenerate", r.skipped_degenerate},
           {"violations", r.violations},
           {"min_quotient", r.min_quotient},
           {"min_description", r.min_description},
           {"witness_checked", r.witness_checked},
           {"witness_violates", r.witness_violates},
           {"witness_quotient", r.witness_quotient}};
}

void to_json(json& j, const JumpFunction& u) {
  j = json{{"a", u.a}, {"b", u.b}, {"jumps", u.jumps}, {"left_value", u.left_value}};
}

void from_json(const json& j, JumpFunction& u) {
  check_keys(j, {"a", "b", "jumps", "left_value"}, "jump function");
  read(j, "a", u.a);
  read(j, "b", u.b);
  read(j, "jumps", u.jumps);
  read(j, "left_value", u.left_value);
}

void to_json(json& j, const SweepConfig& c) {
  j = json{{"n", c.n},
           {"lambda", c.lambda},
           {"lambda_fraction", optional_json(c.lambda_fraction)},
           {"potential", c.potential},
           {"jumps", c.jumps},
           {"epsilons", c.epsilons},
           {"points_per_epsilon", c.points_per_epsilon},
           {"mass", optional_json(c.mass)},
           {"seed", c.seed},
           {"output_path", c.output_path},
           {"lambda_hat", c.lambda_hat},
           {"lambda_starts", c.lambda_starts},
           {"lambda_points", c.lambda_points},
           {"profile_T", c.profile_T},
           {"profile_points", c.profile_points},
           {"minimize", c.minimize},
           {"max_iterations", c.max_iterations},
           {"threads", c.threads}};
}

void from_json(const json& j, SweepConfig& c) {
  check_keys(j,
             {"n", "lambda", "lambda_fraction", "potential", "jumps", "epsilons", "points_per_epsilon", "mass",
              "seed", "output_path", "lambda_hat", "lambda_starts", "lambda_points", "profile_T",
              "profile_points", "minimize", "max_iterations", "threads"},
             "sweep config");
  read(j, "n", c.n);
  read(j, "lambda", c.lambda);
  read_optional(j, "lambda_fraction", c.lambda_fraction);
  read(j, "potential", c.potential);
  read(j, "jumps", c.jumps);
  read(j, "epsilons", c.epsilons);
  read(j, "points_per_epsilon", c.points_per_epsilon);
  read_optional(j, "mass", c.mass);
  read(j, "seed", c.seed);
  read(j, "output_path", c.output_path);
  read(j, "lambda_hat", c.lambda_hat);
  read(j, "lambda_starts", c.lambda_starts);
  read(j, "lambda_points", c.lambda_points);
  read(j, "profile_T", c.profile_T);
  read(j, "profile_points", c.profile_points);
  read(j, "minimize", c.minimize);
  read(j, "max_iterations", c.max_iterations);
  read(j, "threads", c.threads);
}

void to_json(json& j, const SweepRow& r) {
  j = json{{"epsilon", r.epsilon},
           {"E_min", r.E_min},
           {"E_recovery", r.E_recovery},
           {"jumps_detected", r.jumps_detected},
           {"converged", r.converged},
           {"status", r.status},
           {"iterations", r.iterations},
           {"l1_recovery", r.l1_recovery},
           {"error", r.error}};
}

void to_json(json& j, const RunRecord& r) {
  j = json{{"config_hash", r.config_hash},
           {"config", json::parse(r.config_json)},
           {"lambda", r.lambda},
           {"lambda_hat", r.lambda_hat},
           {"C_hat", r.c_hat},
           {"jump_count", r.jump_count},
           {"rows", r.rows},
           {"flags", r.flags},
           {"started_at", r.started_at},
           {"finished_at", r.finished_at}};
}

void to_json(json& j, const SupercriticalRow& r) {
  j = json{{"lambda", r.lambda},
           {"candidate_energies", r.candidate_energies},
           {"best_k", r.best_k},
           {"best_energy", r.best_energy},
           {"best_sign_changes", r.best_sign_changes},
           {"free_energy", r.free_energy},
           {"free_sign_changes", r.free_sign_changes},
           {"free_status", r.free_status}};
}

void to_json(json& j, const SupercriticalReport& r) {
  j = json{{"n", r.n},
           {"epsilon", r.epsilon},
           {"rows", r.rows},
           {"onset_lambda", optional_json(r.onset_lambda)},
           {"energy_monotone", r.energy_monotone},
           {"sign_changes_monotone", r.sign_changes_monotone}};
}

void to_json(json& j, const InitSpec& s) {
  j = json{{"type", s.type}, {"jumps", s.jumps}, {"amplitude", s.amplitude},
           {"k", s.k},       {"value", s.value}, {"seed", s.seed}};
}

void from_json(const json& j, InitSpec& s) {
  check_keys(j, {"type", "jumps", "amplitude", "k", "value", "seed"}, "init");
  read(j, "type", s.type);
  read(j, "jumps", s.jumps);
  read(j, "amplitude", s.amplitude);
  read(j, "k", s.k);
  read(j, "value", s.value);
  read(j, "seed", s.seed);
}

void to_json(json& j, const MinimizeConfig& c) {
  j = json{{"n", c.params.n},
           {"epsilon", c.params.epsilon},
           {"lambda", c.params.lambda},
           {"potential", c.potential},
           {"a", c.a},
           {"b", c.b},
           {"points_per_epsilon", c.points_per_epsilon},
           {"init", c.init},
           {"mass", optional_json(c.mass)},
           {"max_iterations", c.max_iterations},
           {"divergence_floor", c.divergence_floor}};
}

void from_json(const json& j, MinimizeConfig& c) {
  check_keys(j,
             {"n", "epsilon", "lambda", "potential", "a", "b", "points_per_epsilon", "init", "mass",
              "max_iterations", "divergence_floor"},
             "minimize config");
  read(j, "n", c.params.n);
  read(j, "epsilon", c.params.epsilon);
  read(j, "lambda", c.params.lambda);
  read(j, "potential", c.potential);
  read(j, "a", c.a);
  read(j, "b", c.b);
  read(j, "points_per_epsilon", c.points_per_epsilon);
  read(j, "init", c.init);
  read_optional(j, "mass", c.mass);
  read(j, "max_iterations", c.max_iterations);
  if (j.contains("divergence_floor") && !j.at("divergence_floor").is_null())
    c.divergence_floor = j.at("divergence_floor").get<double>();
}

void to_json(json& j, const EnergyMinimum& m) {
  j = json{{"breakdown", m.breakdown},
           {"initial_energy", m.initial_energy},
           {"status", to_string(m.status)},
           {"iterations", m.iterations},
           {"gradient_norm", m.gradient_norm},
           {"converged", m.converged},
           {"diverged", m.diverged},
           {"diagnosis", m.diagnosis}};
}

}  // namespace hpt
