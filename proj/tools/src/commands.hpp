#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hpt::cli {

/// Options shared by the config-driven experiment commands.
struct RunOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

struct HermiteOptions {
  int n = 2;
  std::vector<double> y;
  std::string kind = "zeta";
};

struct ProfileOptions {
  int n = 2;
  double lambda = 0.0;
  std::string potential = "quartic";
  double T = 10.0;
  std::size_t points = 801;
  double lambda_hat = 0.0;
  std::string out_dir = ".";
  unsigned threads = 0;
};

struct LambdaOptions {
  int n = 2;
  std::string potential = "quartic";
  std::size_t starts = 16;
  std::size_t points = 501;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  unsigned threads = 0;
};

struct CheckOptions {
  std::string which;
  int n = 2;
  std::uint64_t seed = 1;
  std::size_t count = 500;
  std::size_t points = 401;
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;
  int k = 1;
  double sigma = 1.0;
  double probe = 1.0;
  double lambda_fraction = 0.5;
  double lambda_hat = 0.0;
  double delta = 0.05;
  double epsilon = 1.0 / 32.0;
  std::string out_dir = ".";
};

// Each command prints its JSON result to `out` and returns the exit code.
int run_hermite(const HermiteOptions& o, std::ostream& out);
int run_profile(const ProfileOptions& o, std::ostream& out);
int run_lambda_n(const LambdaOptions& o, std::ostream& out);
int run_check_ineq(const CheckOptions& o, std::ostream& out);
int run_minimize(const RunOptions& o, std::ostream& out);
int run_gamma_sweep(const RunOptions& o, std::ostream& out);
int run_supercritical(const RunOptions& o, std::ostream& out);

}  // namespace hpt::cli
