#include "condnum/optimize.hpp"


#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace condnum {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Least-squares slope of log(s[k]) against k over the given indices.
double log_slope(std::span<const double> s, std::span<const std::size_t> idx) {
  const double n = static_cast<double>(idx.size());
  double mk = 0.0, my = 0.0;
  for (auto k : idx) {
    mk += static_cast<double>(k);
    my += std::log(s[k]);
  }
  mk /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (auto k : idx) {
    double dk = static_cast<double>(k) - mk;
    sxy += dk * (std::log(s[k]) - my);
    sxx += dk * dk;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "\"inf\""; }

}  // namespace

Trajectory run_foa(const Objective& obj, const Vec& x0, const StepMap& step, int n,
                   std::string label, std::map<std::string, double> params) {
  if (n < 1) throw Error(ErrorCode::invalid_parameter, "iteration count must be >= 1");
  if (x0.size() != obj.dimension()) throw Error(ErrorCode::invalid_parameter, "x0 dimension mismatch");
  Trajectory t;
  t.algo_label = std::move(label);
  t.params = std::move(params);
  const auto reserve = static_cast<std::size_t>(n) + 1;
  t.iterates.reserve(reserve);
  t.values.reserve(reserve);
  t.gradients.reserve(reserve);
  Vec x = x0;
  for (int k = 0;; ++k) {
    double f = obj.value(x);
    Vec g = obj.gradient(x);
    if (!std::isfinite(f) || !g.allFinite() || !x.allFinite()) {
      t.diverged = true;
      break;
    }
    t.iterates.push_back(x);
    t.values.push_back(f);
    t.gradients.push_back(std::move(g));
    t.grad_norms.push_back(t.gradients.back().norm());
    t.subopt.push_back(f - obj.f_star());
    t.dist.push_back(obj.distance(x));
    if (k == n) break;
    x = step(History{t.iterates, t.values, t.gradients});
  }
  return t;
}

StepMap gd_step(double alpha) {
  return [alpha](const History& h) -> Vec { return h.x.back() - alpha * h.g.back(); };
}

StepMap heavy_ball_step(double alpha, double beta) {
  return [alpha, beta](const History& h) -> Vec {
    const Vec& x = h.x.back();
    const Vec& prev = h.x.size() > 1 ? h.x[h.x.size() - 2] : x;
    return x - alpha * h.g.back() + beta * (x - prev);
  };
}

StepMap adaptive_gd_step(double alpha, std::function<double(double)> gprime) {
  return [alpha, gprime](const History& h) -> Vec {
    double s = alpha * gprime(h.f.back());
    if (!std::isfinite(s)) return Vec::Constant(h.x.back().size(), std::numeric_limits<double>::quiet_NaN());
    return h.x.back() - s * h.g.back();
  };
}

Trajectory gd(const Objective& obj, const Vec& x0, double alpha, int n) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_parameter, "gd: alpha must be > 0");
  return run_foa(obj, x0, gd_step(alpha), n, "gd", {{"alpha", alpha}});
}

Trajectory heavy_ball(const Objective& obj, const Vec& x0, double alpha, double beta, int n) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_parameter, "heavy_ball: alpha must be > 0");
  if (!(beta >= 0.0 && beta < 1.0)) throw Error(ErrorCode::invalid_parameter, "heavy_ball: beta must lie in [0, 1)");
  return run_foa(obj, x0, heavy_ball_step(alpha, beta), n, "heavy_ball", {{"alpha", alpha}, {"beta", beta}});
}

Trajectory adaptive_gd(const Objective& obj, const Vec& x0, double alpha,
                       std::function<double(double)> gprime, int n) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_parameter, "adaptive_gd: alpha must be > 0");
  return run_foa(obj, x0, adaptive_gd_step(alpha, std::move(gprime)), n, "adaptive_gd", {{"alpha", alpha}});
}

bool replay_matches(const Trajectory& traj, const StepMap& step) {
  std::span<const Vec> xs = traj.iterates;
  std::span<const double> fs = traj.values;
  std::span<const Vec> gs = traj.gradients;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    Vec next = step(History{xs.first(k + 1), fs.first(k + 1), gs.first(k + 1)});
    if (!(next == traj.iterates[k + 1])) return false;
  }
  return true;
}

std::string to_string(Lyapunov l) {
  switch (l) {
    case Lyapunov::value_gap: return "value_gap";
    case Lyapunov::distance_sq: return "distance_sq";
    case Lyapunov::min_value_gap: return "min_value_gap";
  }
  return "?";
}

std::vector<double> lyapunov_series(const Trajectory& traj, Lyapunov l) {
  std::vector<double> s;
  s.reserve(traj.size());
  switch (l) {
    case Lyapunov::value_gap:
      return traj.subopt;
    case Lyapunov::distance_sq:
      for (double d : traj.dist) s.push_back(d * d);
      return s;
    case Lyapunov::min_value_gap: {
      double m = kInf;
      for (double v : traj.subopt) s.push_back(m = std::min(m, v));
      return s;
    }
  }
  return s;
}

std::string to_string(RateClass c) {
  switch (c) {
    case RateClass::converged_linear: return "converged_linear";
    case RateClass::converged_sublinear: return "converged_sublinear";
    case RateClass::stalled: return "stalled";
    case RateClass::diverged: return "diverged";
  }
  return "?";
}

RateEstimate estimate_rate(std::span<const double> s, bool truncated, const RateOptions& opt) {
  RateEstimate r;
  const bool finite = std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
  if (truncated || !finite || s.empty()) {
    r.linear_rate = r.fit_rate = kInf;
    r.cls = RateClass::diverged;
    return r;
  }
  const std::size_t N = s.size() - 1;
  const std::size_t burn = std::min<std::size_t>(static_cast<std::size_t>(opt.burn_in), N / 2);
  std::vector<std::size_t> live;
  for (std::size_t k = burn; k <= N; ++k)
    if (s[k] > opt.atol) live.push_back(k);
  if (live.empty()) {
    r.tail_start = burn;
    while (r.tail_start < N && s[r.tail_start] > opt.atol) ++r.tail_start;
    return r;
  }
  std::size_t count = static_cast<std::size_t>(std::ceil(opt.tail_fraction * static_cast<double>(live.size())));
  count = std::min(live.size(), std::max<std::size_t>(2, count));
  std::span<const std::size_t> tail(live.data() + live.size() - count, count);
  r.tail_start = tail.front();

  for (auto k : tail)
    if (k + 1 <= N && s[k + 1] > opt.atol) r.linear_rate = std::max(r.linear_rate, s[k + 1] / s[k]);
  r.fit_rate = tail.size() >= 2 ? std::exp(log_slope(s, tail)) : 0.0;

  if (s[N] > opt.growth_factor * s[r.tail_start]) {
    r.cls = RateClass::diverged;
    return r;
  }
  if (s[N] <= opt.atol) {
    r.cls = RateClass::converged_linear;
    return r;
  }
  const std::size_t w = static_cast<std::size_t>(opt.plateau_window);
  if (N >= r.tail_start + w) {
    double recent = *std::min_element(s.begin() + static_cast<std::ptrdiff_t>(N - w + 1), s.end());
    double earlier = *std::min_element(s.begin() + static_cast<std::ptrdiff_t>(r.tail_start),
                                       s.begin() + static_cast<std::ptrdiff_t>(N - w + 1));
    if (recent >= earlier) {
      r.cls = RateClass::stalled;
      return r;
    }
  }
  bool decelerating = false;
  if (tail.size() >= 8) {
    std::size_t h = tail.size() / 2;
    double first = log_slope(s, tail.first(h));
    double second = log_slope(s, tail.subspan(h));
    decelerating = first < 0.0 && second > opt.deceleration * first;
  }
  if (r.fit_rate < 1.0 - opt.class_margin && !decelerating)
    r.cls = RateClass::converged_linear;
  else if (r.fit_rate < 1.0)
    r.cls = RateClass::converged_sublinear;
  else
    r.cls = RateClass::stalled;
  return r;
}

RateEstimate estimate_rate(const Trajectory& traj, const RateOptions& opt, Lyapunov l) {
  auto s = lyapunov_series(traj, l);
  return estimate_rate(s, traj.diverged, opt);
}

RateEstimate estimate_rate(const Trajectory& traj, double tail_fraction) {
  RateOptions opt;
  opt.tail_fraction = tail_fraction;
  return estimate_rate(traj, opt);
}

std::optional<std::size_t> first_hit(const Trajectory& traj, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::invalid_parameter, "first_hit: radius must be > 0");
  for (std::size_t k = 0; k < traj.dist.size(); ++k)
    if (traj.dist[k] < radius) return k;
  return std::nullopt;
}

std::string to_json(const RateEstimate& r) {
  std::ostringstream os;
  os << "{\"linear_rate\": " << json_number(r.linear_rate) << ", \"fit_rate\": " << json_number(r.fit_rate)
     << ", \"class\": \"" << to_string(r.cls) << "\", \"tail_start\": " << r.tail_start << "}";
  return os.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  const Eigen::Index d = traj.iterates.empty() ? 0 : traj.iterates.front().size();
  os << "iter";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i;
  os << ",f,grad_norm,subopt,dist\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << k;
    for (Eigen::Index i = 0; i < d; ++i) os << "," << format_double(traj.iterates[k][i]);
    os << "," << format_double(traj.values[k]) << "," << format_double(traj.grad_norms[k]) << ","
       << format_double(traj.subopt[k]) << "," << format_double(traj.dist[k]) << "\n";
  }
  return os.str();
}

}  // namespace condnum
