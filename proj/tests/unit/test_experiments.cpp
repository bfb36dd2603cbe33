#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hpt/experiments.hpp"

using hpt::Field;
using hpt::Grid;
using hpt::JumpFunction;

namespace {

const hpt::DoubleWell kQuartic = hpt::make_quartic();

hpt::SweepConfig quick_sweep(std::vector<double> jumps, double a, double b) {
  hpt::SweepConfig cfg;
  cfg.lambda = 0.015;
  cfg.jumps = JumpFunction{a, b, std::move(jumps), -1};
  cfg.epsilons = {0.25, 0.125};
  cfg.lambda_hat = 0.0569;
  return cfg;
}

}  // namespace

TEST(MinimizeEnergy, DescentFromRecoverySequence) {
  const auto profile = hpt::minimize_profile(hpt::ProfileProblem{2, 0.015, 10.0, 801, kQuartic});
  const JumpFunction u{-3.0, 3.0, {0.0}, -1};
  const Field init = hpt::build_recovery(u, profile.minimizer, 0.125);
  const auto m = hpt::minimize_energy(init, {2, 0.125, 0.015}, kQuartic);
  EXPECT_LE(m.breakdown.total, m.initial_energy);
  EXPECT_TRUE(m.converged) << hpt::to_string(m.status);
  EXPECT_FALSE(m.diverged);
}

TEST(MinimizeEnergy, MassConstraintIsExact) {
  hpt::MinimizeConfig cfg;
  cfg.params = {2, 0.1, 0.01};
  cfg.init.type = "sine";
  cfg.init.k = 2;
  const Field init = hpt::make_initial_field(cfg);
  hpt::EnergyMinimizeOptions opts;
  opts.mass = 0.0;
  const auto m = hpt::minimize_energy(init, cfg.params, kQuartic, opts);
  EXPECT_NEAR(hpt::integrate(m.minimizer) / m.minimizer.grid().length(), 0.0, 1e-10);
  EXPECT_LE(m.breakdown.total, m.initial_energy);
}

TEST(MinimizeEnergy, ShiftsStartOntoPrescribedMass) {
  const Field init(Grid(-1.0, 1.0, 201), 0.9);
  hpt::EnergyMinimizeOptions opts;
  opts.mass = 0.5;
  opts.lbfgs.max_iterations = 5;
  const auto m = hpt::minimize_energy(init, {2, 0.1, 0.0}, kQuartic, opts);
  EXPECT_NEAR(hpt::integrate(m.minimizer), 0.5, 1e-10);
  opts.mass = 2.0;
  EXPECT_THROW(hpt::minimize_energy(init, {2, 0.1, 0.0}, kQuartic, opts), std::invalid_argument);
}

TEST(MinimizeEnergy, SupercriticalDivergence) {
  hpt::MinimizeConfig cfg;
  cfg.params = {2, 1.0 / 16.0, 10.0};
  cfg.a = -1.0;
  cfg.b = 1.0;
  hpt::EnergyMinimizeOptions opts;
  opts.divergence_floor = -1e3;
  const auto m = hpt::minimize_energy(hpt::make_initial_field(cfg), cfg.params, kQuartic, opts);
  EXPECT_TRUE(m.diverged);
  EXPECT_EQ(m.diagnosis, "supercritical divergence");
  EXPECT_LT(m.breakdown.total, -1e3);
  EXPECT_GE(hpt::sign_changes(m.minimizer), 4);
}

TEST(Helpers, SignChangesAndJumps) {
  const Field f = Field::sample(Grid(0.0, 1.0, 1001), [](double x) { return std::sin(6.0 * M_PI * x + 0.1); });
  EXPECT_EQ(hpt::sign_changes(f), 6);
  EXPECT_EQ(hpt::count_jumps(f, 0.01), 6u);
  EXPECT_EQ(hpt::count_jumps(f, 0.15), 6u);
  EXPECT_EQ(hpt::count_jumps(f, 0.2), 1u);
  EXPECT_EQ(hpt::count_jumps(Field(Grid(0.0, 1.0, 10), 1.0), 0.1), 0u);
  const Field z = Field(Grid(0.0, 1.0, 5), std::vector<double>{1.0, 0.0, 0.0, -1.0, -2.0});
  EXPECT_EQ(hpt::sign_changes(z), 1);
}

TEST(Helpers, L1DistanceOfStep) {
  const JumpFunction u{-1.0, 1.0, {0.0}, -1};
  const Field f(Grid(-1.0, 1.0, 2001), 1.0);
  EXPECT_NEAR(hpt::l1_distance(f, u), 2.0, 2e-3);
}

TEST(Helpers, GeometricSchedule) {
  EXPECT_EQ(hpt::geometric_schedule(0.25, 5), (std::vector<double>{0.25, 0.125, 0.0625, 0.03125, 0.015625}));
}

TEST(Sweep, NoJumpsHasZeroEnergy) {
  auto cfg = quick_sweep({}, -2.0, 2.0);
  cfg.jumps.left_value = 1;
  const auto rec = hpt::gamma_sweep(cfg);
  ASSERT_EQ(rec.rows.size(), 2u);
  for (const auto& row : rec.rows) {
    EXPECT_EQ(row.E_recovery, 0.0);
    EXPECT_NEAR(row.E_min, 0.0, 1e-12);
    EXPECT_EQ(row.jumps_detected, 0u);
  }
}

TEST(Sweep, SingleJumpRecoversConstant) {
  const auto rec = hpt::gamma_sweep(quick_sweep({0.0}, -6.0, 6.0));
  ASSERT_EQ(rec.rows.size(), 2u);
  EXPECT_GT(rec.c_hat, 0.0);
  EXPECT_EQ(rec.jump_count, 1u);
  EXPECT_GT(rec.rows[0].epsilon, rec.rows[1].epsilon);
  for (const auto& row : rec.rows) {
    EXPECT_TRUE(row.error.empty()) << row.error;
    EXPECT_LT(std::abs(row.E_recovery - rec.c_hat) / rec.c_hat, 0.05);
    EXPECT_LE(row.E_min, row.E_recovery * (1.0 + 1e-12));
    EXPECT_EQ(row.jumps_detected, 1u);
    EXPECT_TRUE(row.converged) << row.status;
  }
}

TEST(Sweep, DeterministicModuloTimestamps) {
  const auto cfg = quick_sweep({0.0}, -6.0, 6.0);
  const auto a = hpt::gamma_sweep(cfg);
  const auto b = hpt::gamma_sweep(cfg);
  EXPECT_EQ(a.config_hash, b.config_hash);
  EXPECT_EQ(a.c_hat, b.c_hat);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].E_min, b.rows[i].E_min);
    EXPECT_EQ(a.rows[i].E_recovery, b.rows[i].E_recovery);
  }
}

TEST(Sweep, ConfigHashIgnoresOutputAndThreads) {
  auto a = quick_sweep({0.0}, -6.0, 6.0);
  auto b = a;
  b.output_path = "/tmp/elsewhere";
  b.threads = 7;
  EXPECT_EQ(hpt::config_hash(a), hpt::config_hash(b));
  b.seed = 2;
  EXPECT_NE(hpt::config_hash(a), hpt::config_hash(b));
  EXPECT_EQ(hpt::config_hash(a).size(), 16u);
}

TEST(Sweep, ValidationErrors) {
  auto cfg = quick_sweep({0.0}, -6.0, 6.0);
  cfg.epsilons = {0.1, 0.2};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = quick_sweep({0.0}, -6.0, 6.0);
  cfg.mass = 12.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.mass = 0.0;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Sweep, PersistsJsonAndCsv) {
  auto rec = hpt::gamma_sweep(quick_sweep({0.0}, -6.0, 6.0));
  const auto dir = std::filesystem::temp_directory_path() / "hpt_sweep_test";
  std::filesystem::remove_all(dir);
  hpt::write_run(rec, dir);
  ASSERT_TRUE(std::filesystem::exists(dir / "run.json"));
  std::ifstream csv(dir / "rows.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "epsilon,E_min,E_recovery,jumps_detected,converged");
  int lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  EXPECT_EQ(lines, 2);
  std::filesystem::remove_all(dir);
}

TEST(Supercritical, ZeroLambdaNonNegativeAndMonotone) {
  const auto rep = hpt::supercritical_probe(2, {0.0, 1.0, 4.0, 16.0}, 1.0 / 16.0, kQuartic);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (double e : rep.rows[0].candidate_energies) EXPECT_GE(e, 0.0);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    EXPECT_LE(rep.rows[i].best_energy, rep.rows[i - 1].best_energy);
    for (std::size_t k = 0; k < rep.rows[i].candidate_energies.size(); ++k)
      EXPECT_LE(rep.rows[i].candidate_energies[k], rep.rows[i - 1].candidate_energies[k]);
  }
  EXPECT_TRUE(rep.energy_monotone);
  EXPECT_TRUE(rep.sign_changes_monotone);
  ASSERT_TRUE(rep.onset_lambda.has_value());
  EXPECT_LT(rep.rows.back().best_energy, 0.0);
}

TEST(Supercritical, RejectsUnsortedGrid) {
  EXPECT_THROW(hpt::supercritical_probe(2, {1.0, 0.5}, 0.1, kQuartic), std::invalid_argument);
}

TEST(InitialField, Kinds) {
  hpt::MinimizeConfig cfg;
  cfg.params = {2, 0.1, 0.0};
  cfg.init.type = "constant";
  cfg.init.value = 0.25;
  EXPECT_EQ(hpt::make_initial_field(cfg)[3], 0.25);
  cfg.init.type = "jumps";
  cfg.init.jumps = JumpFunction{-1.0, 1.0, {-0.5, 0.5}, -1};
  const Field f = hpt::make_initial_field(cfg);
  EXPECT_LT(f[0], -0.99);
  EXPECT_GT(hpt::interpolate(f, 0.0), 0.99);
  EXPECT_LT(f[f.size() - 1], -0.99);
  cfg.init.type = "random";
  EXPECT_NO_THROW(hpt::make_initial_field(cfg));
  cfg.init.type = "bogus";
  EXPECT_THROW(hpt::make_initial_field(cfg), std::invalid_argument);
}
