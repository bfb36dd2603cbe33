#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hpt/energy.hpp"
#include "hpt/grid.hpp"
#include "hpt/lbfgs.hpp"
#include "hpt/potential.hpp"
#include "hpt/profile.hpp"

namespace hpt {

struct EnergyMinimizeOptions {
  /// Prescribed int u (trapezoid); the start is shifted onto it and the
  /// gradient is projected onto the constraint plane.
  std::optional<double> mass;
  LbfgsOptions lbfgs{};
  /// Energy below which the run stops as "supercritical divergence".
  double divergence_floor = -std::numeric_limits<double>::infinity();
};

struct EnergyMinimum {
  Field minimizer{Grid(0.0, 1.0, 2)};
  EnergyBreakdown breakdown;
  double initial_energy = 0.0;
  LbfgsStatus status = LbfgsStatus::max_iterations;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  bool diverged = false;
  std::string diagnosis;
};

/// Local minimizer of G on init's grid. Throws std::invalid_argument when the
/// mass is outside (-|I|, |I|).
EnergyMinimum minimize_energy(const Field& init, const EnergyParams& p, const DoubleWell& w,
                              const EnergyMinimizeOptions& opts = {});

/// Strict sign changes of the samples; entries with |u| <= zero_tol are skipped.
int sign_changes(const Field& u, double zero_tol = 1e-12);

/// Zero crossings of u (threshold 0), with crossings closer than merge_distance
/// merged into one cluster; returns the number of clusters.
std::size_t count_jumps(const Field& u, double merge_distance);

/// int |u - v| for fields on the same grid.
double l1_distance(const Field& u, const JumpFunction& v);

/// first, first/2, ..., count entries.
std::vector<double> geometric_schedule(double first, int count);

struct SweepConfig {
  int n = 2;
  /// Used when lambda_fraction is unset.
  double lambda = 0.0;
  /// lambda = lambda_fraction * lambda_hat.
  std::optional<double> lambda_fraction;
  std::string potential = "quartic";
  JumpFunction jumps{-6.0, 6.0, {0.0}, -1};
  std::vector<double> epsilons = geometric_schedule(0.25, 5);
  double points_per_epsilon = 32.0;
  std::optional<double> mass;
  std::uint64_t seed = 1;
  /// Directory for run.json and rows.csv; empty disables persistence.
  std::string output_path;
  /// Skips the estimate when positive.
  double lambda_hat = 0.0;
  std::size_t lambda_starts = 16;
  std::size_t lambda_points = 501;
  double profile_T = 10.0;
  std::size_t profile_points = 801;
  bool minimize = true;
  int max_iterations = 3000;
  unsigned threads = 0;

  /// Throws std::invalid_argument for a non-decreasing schedule, a mass outside
  /// (-|I|, |I|), or an invalid jump function.
  void validate() const;
};

struct SweepRow {
  double epsilon = 0.0;
  double E_min = 0.0;
  double E_recovery = 0.0;
  std::size_t jumps_detected = 0;
  bool converged = false;
  std::string status;
  int iterations = 0;
  double l1_recovery = 0.0;
  std::string error;
};

struct RunRecord {
  std::string config_hash;
  std::string config_json;
  double lambda = 0.0;
  double lambda_hat = 0.0;
  double c_hat = 0.0;
  std::size_t jump_count = 0;
  std::vector<SweepRow> rows;  // decreasing epsilon
  /// Notes on trend inversions and ordering violations; never fatal.
  std::vector<std::string> flags;
  std::string started_at;
  std::string finished_at;
};

/// FNV-1a 64 of the canonical (sorted-key) JSON of the config, excluding the
/// output path and thread count, as 16 hex digits.
std::string config_hash(const SweepConfig& cfg);

/// For each eps: recovery sequence, its energy, a minimization started from
/// it, and the jump count of the minimizer. Per-eps failures are recorded in
/// the row; the sweep continues.
RunRecord gamma_sweep(const SweepConfig& cfg);

/// CSV with header epsilon,E_min,E_recovery,jumps_detected,converged.
void write_rows_csv(std::ostream& out, const RunRecord& rec);
/// Writes dir/run.json and dir/rows.csv (creating dir).
void write_run(const RunRecord& rec, const std::filesystem::path& dir);

struct SupercriticalOptions {
  double interval_length = 1.0;
  int k_max = 8;
  double amplitude = 1.0;
  double points_per_epsilon = 32.0;
  bool free_minimization = true;
  int free_iterations = 500;
  double divergence_floor = -1e6;
  unsigned threads = 0;
};

struct SupercriticalRow {
  double lambda = 0.0;
  /// Index 0 is the pure phase u = 1, index k >= 1 is clip(A sin(2 pi k x / |I|)).
  std::vector<double> candidate_energies;
  int best_k = 0;
  double best_energy = 0.0;
  int best_sign_changes = 0;
  double free_energy = 0.0;
  int free_sign_changes = 0;
  std::string free_status;
};

struct SupercriticalReport {
  int n = 2;
  double epsilon = 0.0;
  std::vector<SupercriticalRow> rows;
  std::optional<double> onset_lambda;  // first lambda with best_energy < 0
  bool energy_monotone = true;         // best_energy non-increasing in lambda
  bool sign_changes_monotone = true;   // best_sign_changes non-decreasing in lambda
};

/// Throws std::invalid_argument unless lambda_grid is strictly increasing.
SupercriticalReport supercritical_probe(int n, const std::vector<double>& lambda_grid, double eps,
                                        const DoubleWell& w, const SupercriticalOptions& opts = {});

/// Starting field for the `minimize` command.
struct InitSpec {
  std::string type = "jumps";  // jumps | sine | constant | random
  JumpFunction jumps{-1.0, 1.0, {0.0}, -1};
  double amplitude = 1.0;
  int k = 1;
  double value = 0.0;
  std::uint64_t seed = 1;
};

struct MinimizeConfig {
  EnergyParams params{};
  std::string potential = "quartic";
  double a = -1.0;
  double b = 1.0;
  double points_per_epsilon = 32.0;
  InitSpec init{};
  std::optional<double> mass;
  int max_iterations = 10000;
  double divergence_floor = -std::numeric_limits<double>::infinity();
};

/// Start field on (a, b): tanh(+-(x - s_i)/eps) layers at the jumps, a sine,
/// a constant, or a seeded ensemble field.
Field make_initial_field(const MinimizeConfig& cfg);

}  // namespace hpt
