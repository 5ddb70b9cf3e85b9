#pragma once

#include "condnum/objective.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace condnum {

// What the algorithm has seen so far: iterates, values and gradients.
struct History {
  std::span<const Vec> x;
  std::span<const double> f;
  std::span<const Vec> g;
};

using StepMap = std::function<Vec(const History&)>;

struct Trajectory {
  std::vector<Vec> iterates;
  std::vector<double> values;
  std::vector<Vec> gradients;
  std::vector<double> grad_norms;
  std::vector<double> subopt;
  std::vector<double> dist;
  std::string algo_label;
  std::map<std::string, double> params;
  bool diverged = false;

  std::size_t size() const { return iterates.size(); }
};

// Runs n steps of x_{k+1} = step(history). Stops early on non-finite values.
Trajectory run_foa(const Objective& obj, const Vec& x0, const StepMap& step, int n,
                   std::string label, std::map<std::string, double> params);

StepMap gd_step(double alpha);
StepMap heavy_ball_step(double alpha, double beta);
StepMap adaptive_gd_step(double alpha, std::function<double(double)> gprime);

Trajectory gd(const Objective& obj, const Vec& x0, double alpha, int n);
// x_{-1} = x_0.
Trajectory heavy_ball(const Objective& obj, const Vec& x0, double alpha, double beta, int n);
// x_{k+1} = x_k - alpha * gprime(f(x_k)) * grad f(x_k)
Trajectory adaptive_gd(const Objective& obj, const Vec& x0, double alpha,
                       std::function<double(double)> gprime, int n);

// Recomputes every iterate from the recorded history; true iff all match bit for bit.
bool replay_matches(const Trajectory& traj, const StepMap& step);

enum class Lyapunov { value_gap, distance_sq, min_value_gap };
std::string to_string(Lyapunov l);
std::vector<double> lyapunov_series(const Trajectory& traj, Lyapunov l);

enum class RateClass { converged_linear, converged_sublinear, stalled, diverged };
std::string to_string(RateClass c);

struct RateOptions {
  double tail_fraction = 0.5;
  double atol = 1e-10;
  int burn_in = 10;
  int plateau_window = 10;
  double class_margin = 1e-6;
  double growth_factor = 10.0;
  // Second-half / first-half log-decrease ratio below which the tail counts as decelerating.
  double deceleration = 0.85;
};

struct RateEstimate {
  double linear_rate = 0.0;
  double fit_rate = 0.0;
  RateClass cls = RateClass::converged_linear;
  std::size_t tail_start = 0;
};

RateEstimate estimate_rate(std::span<const double> series, bool truncated, const RateOptions& opt = {});
RateEstimate estimate_rate(const Trajectory& traj, const RateOptions& opt = {},
                           Lyapunov l = Lyapunov::value_gap);
RateEstimate estimate_rate(const Trajectory& traj, double tail_fraction);

std::optional<std::size_t> first_hit(const Trajectory& traj, double radius);

std::string to_json(const RateEstimate& r);
std::string trajectory_csv(const Trajectory& traj);

}  // namespace condnum
