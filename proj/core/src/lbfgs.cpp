#include "hpt/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace hpt {

std::string to_string(LbfgsStatus status) {
  switch (status) {
    case LbfgsStatus::converged: return "converged";
    case LbfgsStatus::max_iterations: return "max_iterations";
    case LbfgsStatus::diverged: return "diverged";
    case LbfgsStatus::line_search_failed: return "line_search_failed";
    case LbfgsStatus::stalled: return "stalled";
  }
  return "unknown";
}

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kCurvature = 0.9;
// Approximate Wolfe acceptance (Hager-Zhang) near the roundoff floor of f.
constexpr double kApproxDelta = 0.1;
constexpr double kValueNoise = 1e-11;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Trial {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;
  std::vector<double> x;
  std::vector<double> g;
};

class LineSearch {
 public:
  LineSearch(const Objective& obj, std::span<const double> x, std::span<const double> d, double f0,
             double slope0, int budget)
      : obj_(obj), x_(x), d_(d), f0_(f0), slope0_(slope0), budget_(budget) {}

  int evaluations() const { return evaluations_; }

  // Returns true and fills `accepted` on success.
  bool run(double alpha0, Trial& accepted) {
    Trial prev{0.0, f0_, slope0_, {}, {}};
    double alpha = alpha0;
    for (int i = 0; evaluations_ < budget_; ++i) {
      Trial cur = evaluate(alpha);
      if (approximately_wolfe(cur)) {
        accepted = std::move(cur);
        return true;
      }
      if (!std::isfinite(cur.value) || cur.value > f0_ + kArmijo * alpha * slope0_ ||
          (i > 0 && cur.value >= prev.value))
        return zoom(prev, cur, accepted);
      if (std::abs(cur.slope) <= -kCurvature * slope0_) {
        accepted = std::move(cur);
        return true;
      }
      if (cur.slope >= 0.0) return zoom(cur, prev, accepted);
      remember(cur);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return fallback(accepted);
  }

 private:
  bool approximately_wolfe(const Trial& t) const {
    return std::isfinite(t.value) && t.value <= f0_ + kValueNoise * std::abs(f0_) &&
           t.slope >= kCurvature * slope0_ && t.slope <= (2.0 * kApproxDelta - 1.0) * slope0_;
  }

  Trial evaluate(double alpha) {
    ++evaluations_;
    Trial t;
    t.alpha = alpha;
    t.x.resize(x_.size());
    t.g.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) t.x[i] = x_[i] + alpha * d_[i];
    t.value = obj_.value_and_gradient(t.x, t.g);
    t.slope = std::isfinite(t.value) ? dot(t.g, d_) : std::numeric_limits<double>::quiet_NaN();
    return t;
  }

  void remember(const Trial& t) {
    if (std::isfinite(t.value) && t.value <= f0_ + kArmijo * t.alpha * slope0_ &&
        (!best_ || t.value < best_->value))
      best_ = t;
  }

  static double interpolate(const Trial& lo, const Trial& hi) {
    const double a = lo.alpha;
    const double b = hi.alpha;
    const double left = std::min(a, b);
    const double width = std::abs(b - a);
    double alpha = 0.5 * (a + b);
    if (std::isfinite(hi.value) && std::isfinite(hi.slope)) {
      const double d1 = lo.slope + hi.slope - 3.0 * (lo.value - hi.value) / (a - b);
      const double disc = d1 * d1 - lo.slope * hi.slope;
      if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), b - a);
        const double cubic = b - (b - a) * (hi.slope + d2 - d1) / (hi.slope - lo.slope + 2.0 * d2);
        if (std::isfinite(cubic)) alpha = cubic;
      }
    }
    return std::clamp(alpha, left + 0.1 * width, left + 0.9 * width);
  }

  bool zoom(Trial lo, Trial hi, Trial& accepted) {
    while (evaluations_ < budget_) {
      if (std::abs(hi.alpha - lo.alpha) <= 1e-16 * std::max(1.0, lo.alpha)) break;
      Trial cur = evaluate(interpolate(lo, hi));
      if (approximately_wolfe(cur)) {
        accepted = std::move(cur);
        return true;
      }
      if (!std::isfinite(cur.value) || cur.value > f0_ + kArmijo * cur.alpha * slope0_ ||
          cur.value >= lo.value) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.slope) <= -kCurvature * slope0_) {
        accepted = std::move(cur);
        return true;
      }
      remember(cur);
      if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
    if (lo.alpha > 0.0) remember(lo);
    return fallback(accepted);
  }

  // Budget exhausted: accept the best point with sufficient decrease, if any.
  bool fallback(Trial& accepted) {
    if (!best_) return false;
    accepted = std::move(*best_);
    return true;
  }

  const Objective& obj_;
  std::span<const double> x_;
  std::span<const double> d_;
  double f0_;
  double slope0_;
  int budget_;
  int evaluations_ = 0;
  std::optional<Trial> best_;
};

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& objective, std::vector<double> x0,
                           const LbfgsOptions& options) {
  if (!objective.value_and_gradient) throw std::invalid_argument("objective has no gradient callback");
  const std::size_t n = x0.size();
  LbfgsResult result;
  result.x = std::move(x0);

  std::vector<double> g(n);
  double f = objective.value_and_gradient(result.x, g);
  result.evaluations = 1;
  if (!std::isfinite(f)) throw std::invalid_argument("objective is not finite at the starting point");

  std::deque<Pair> memory;
  std::vector<double> q(n);
  std::vector<double> d(n);
  std::vector<double> alphas;
  std::deque<double> best_history;

  // Approximate Wolfe steps may raise f by roundoff; keep the best iterate.
  std::vector<double> best_x = result.x;
  double best_f = f;
  double best_gnorm = sup_norm(g);

  auto precondition = [&](std::span<double> v) {
    if (objective.precondition) objective.precondition(v);
  };

  for (result.iterations = 0;; ++result.iterations) {
    result.value = f;
    result.gradient_norm = sup_norm(g);
    if (result.gradient_norm < options.gradient_tolerance) {
      result.status = LbfgsStatus::converged;
      break;
    }
    if (f < options.value_floor) {
      result.status = LbfgsStatus::diverged;
      break;
    }
    if (result.iterations >= options.max_iterations) {
      result.status = LbfgsStatus::max_iterations;
      break;
    }

    // Two-loop recursion.
    q = g;
    alphas.assign(memory.size(), 0.0);
    for (std::size_t k = memory.size(); k-- > 0;) {
      alphas[k] = memory[k].rho * dot(memory[k].s, q);
      for (std::size_t i = 0; i < n; ++i) q[i] -= alphas[k] * memory[k].y[i];
    }
    double gamma = 1.0;
    if (!memory.empty()) {
      const auto& last = memory.back();
      std::vector<double> my = last.y;
      precondition(my);
      const double denom = dot(last.y, my);
      if (denom > 0.0) gamma = dot(last.s, last.y) / denom;
    }
    precondition(q);
    for (double& v : q) v *= gamma;
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * dot(memory[k].y, q);
      for (std::size_t i = 0; i < n; ++i) q[i] += memory[k].s[i] * (alphas[k] - beta);
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = -q[i];

    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      memory.clear();
      d = g;
      precondition(d);
      for (double& v : d) v = -v;
      slope = dot(g, d);
      if (!(slope < 0.0)) {
        result.status = LbfgsStatus::line_search_failed;
        break;
      }
    }

    double alpha0 = 1.0;
    if (memory.empty() && !objective.precondition) alpha0 = 1.0 / std::max(1.0, std::sqrt(dot(d, d)));

    Trial accepted;
    LineSearch search(objective, result.x, d, f, slope, options.max_line_search_evaluations);
    bool ok = search.run(alpha0, accepted);
    result.evaluations += search.evaluations();
    if (!ok && !memory.empty()) {
      // Retry from a fresh (preconditioned) steepest-descent direction.
      memory.clear();
      d = g;
      precondition(d);
      for (double& v : d) v = -v;
      slope = dot(g, d);
      if (objective.precondition == nullptr) alpha0 = 1.0 / std::max(1.0, std::sqrt(dot(d, d)));
      LineSearch retry(objective, result.x, d, f, slope, options.max_line_search_evaluations);
      ok = slope < 0.0 && retry.run(alpha0, accepted);
      result.evaluations += retry.evaluations();
    }
    if (!ok) {
      result.status = LbfgsStatus::line_search_failed;
      break;
    }

    Pair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = accepted.x[i] - result.x[i];
      pair.y[i] = accepted.g[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-300 && sy > 1e-14 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }

    result.x = std::move(accepted.x);
    g = std::move(accepted.g);
    f = accepted.value;
    if (f < best_f) {
      best_x = result.x;
      best_f = f;
      best_gnorm = sup_norm(g);
    }

    best_history.push_back(best_f);
    bool stalled = false;
    if (static_cast<int>(best_history.size()) > options.stall_iterations) {
      stalled = best_history.front() - best_f <= 1e-14 * std::abs(best_f);
      best_history.pop_front();
    }
    if (stalled) {
      result.value = f;
      result.gradient_norm = sup_norm(g);
      result.status = result.gradient_norm < options.gradient_tolerance ? LbfgsStatus::converged
                                                                        : LbfgsStatus::stalled;
      ++result.iterations;
      break;
    }
  }
  if (best_f < result.value && result.status != LbfgsStatus::converged) {
    result.x = std::move(best_x);
    result.value = best_f;
    result.gradient_norm = best_gnorm;
  }
  return result;
}

}  // namespace hpt
