#include "condnum/conditions.hpp"

#include "condnum/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace condnum {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = SampledObjective::Point;

Point evaluate(const Objective& obj, const Vec& x) {
  Point p;
  p.x = x;
  p.f = obj.value(x);
  p.g = obj.gradient(x);
  p.xp = obj.minimizers().project(x);
  p.d = (x - p.xp).norm();
  return p;
}

RatioTerms terms(Family family, const Point& p, double f_star, const Point* y) {
  switch (family) {
    case Family::SC: {
      Vec dy = y->x - p.x;
      return {2.0 * (y->f - p.f - p.g.dot(dy)), dy.squaredNorm(), 0.5};
    }
    case Family::StarSC:
      return {2.0 * (f_star - p.f - p.g.dot(p.xp - p.x)), p.d * p.d, 0.5};
    case Family::RSI:
      return {p.g.dot(p.x - p.xp), p.d * p.d, 1.0};
    case Family::EB:
      return {p.g.norm(), p.d, 1.0};
    case Family::PL:
      return {p.g.squaredNorm(), 2.0 * (p.f - f_star), 0.5};
    case Family::QG:
      return {2.0 * (p.f - f_star), p.d * p.d, 0.5};
  }
  return {0.0, 1.0, 1.0};
}

std::vector<double> axis_points(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) out.back() = hi;
  return out;
}

bool better(double candidate, double incumbent, Side side) {
  return side == Side::lower ? candidate < incumbent : candidate > incumbent;
}

// Golden-section search for the extremum of the ratio on [a, b] (1-D only).
std::pair<double, double> golden_refine(ConditionKind kind, const Objective& obj, double a,
                                        double b, double exclusion) {
  const double sign = kind.is_lower() ? 1.0 : -1.0;
  auto phi = [&](double t) {
    Point p = evaluate(obj, vec1(t));
    if (p.d < exclusion) return kInf;
    double r = terms(kind.family, p, obj.f_star(), nullptr).ratio();
    return std::isfinite(r) ? sign * r : kInf;
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 50; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = phi(d);
    }
  }
  return fc < fd ? std::make_pair(c, sign * fc) : std::make_pair(d, sign * fd);
}

}  // namespace

double RatioTerms::ratio() const {
  if (denominator <= 0.0) return kInf;
  return numerator / denominator;
}

double RatioTerms::slack(double c, Side side) const {
  return side == Side::lower ? scale * (numerator - c * denominator)
                             : scale * (c * denominator - numerator);
}

EstimationGrid EstimationGrid::centered(const Vec& center, double half_width, int points_per_axis) {
  EstimationGrid g;
  g.low = center.array() - half_width;
  g.high = center.array() + half_width;
  g.points_per_axis = points_per_axis;
  g.exclusion_radius = 1e-4;
  g.pair_samples = center.size() == 1 ? 201 : 10000;
  return g;
}

EstimationGrid EstimationGrid::defaults_for(const Objective& obj) {
  Vec c = obj.minimizers().anchor();
  if (obj.dimension() == 1) return centered(c, 5.0, 20001);
  return centered(c, 3.0, 41);
}

std::string EstimationGrid::describe() const {
  std::ostringstream os;
  os.precision(10);
  os << "box=";
  for (Eigen::Index i = 0; i < low.size(); ++i)
    os << (i ? "x" : "") << "[" << low[i] << "," << high[i] << "]";
  os << " points_per_axis=" << points_per_axis << " exclusion_radius=" << exclusion_radius
     << " pair_samples=" << pair_samples << " seed=" << seed << " refine=" << (refine ? 1 : 0);
  return os.str();
}

void EstimationGrid::validate(const Objective& obj) const {
  if (low.size() != obj.dimension() || high.size() != obj.dimension())
    throw Error(ErrorCode::estimation, "grid dimension does not match objective");
  if (!(exclusion_radius > 0.0)) throw Error(ErrorCode::estimation, "exclusion_radius must be > 0");
  if (points_per_axis < 2) throw Error(ErrorCode::estimation, "points_per_axis must be >= 2");
  for (Eigen::Index i = 0; i < low.size(); ++i)
    if (!(low[i] < high[i])) throw Error(ErrorCode::estimation, "grid box is empty");
}

RatioTerms ratio_terms(Family family, const Objective& obj, const Vec& x,
                       const std::optional<Vec>& y) {
  Point p = evaluate(obj, x);
  if (family == Family::SC) {
    if (!y) throw Error(ErrorCode::invalid_parameter, "SC ratio needs a second point");
    if (*y == x) throw Error(ErrorCode::excluded_point, "SC ratio needs y != x");
    Point q = evaluate(obj, *y);
    return terms(family, p, obj.f_star(), &q);
  }
  if (p.d <= 0.0) throw Error(ErrorCode::excluded_point, "x lies in the minimizer set");
  return terms(family, p, obj.f_star(), nullptr);
}

double defining_ratio(ConditionKind kind, const Objective& obj, const Vec& x,
                      const std::optional<Vec>& y) {
  return ratio_terms(kind.family, obj, x, y).ratio();
}

SampledObjective::SampledObjective(const Objective& obj, const EstimationGrid& grid)
    : obj_(obj), grid_(grid) {
  grid_.validate(obj);
  const int d = obj.dimension();
  std::vector<Vec> xs;
  std::vector<std::vector<double>> axes;
  for (int i = 0; i < d; ++i) axes.push_back(axis_points(grid_.low[i], grid_.high[i], grid_.points_per_axis));
  if (d == 1) {
    auto& ax = axes[0];
    // Breakpoints replace lattice points that sit within rounding distance of them.
    const double snap = 1e-9 * (grid_.high[0] - grid_.low[0]) / (grid_.points_per_axis - 1);
    for (double k : obj.kinks()) {
      if (!(k > grid_.low[0] && k < grid_.high[0])) continue;
      std::erase_if(ax, [&](double t) { return std::abs(t - k) < snap; });
      ax.push_back(k);
    }
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    for (double t : ax) xs.push_back(vec1(t));
  } else {
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= axes[static_cast<std::size_t>(i)].size();
    xs.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t n = 0; n < total; ++n) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x[i] = axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      xs.push_back(std::move(x));
      for (int i = d - 1; i >= 0; --i) {
        auto& k = idx[static_cast<std::size_t>(i)];
        if (++k < axes[static_cast<std::size_t>(i)].size()) break;
        k = 0;
      }
    }
  }

  std::vector<Point> all(xs.size());
  parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) all[i] = evaluate(obj_, xs[i]);
  });
  for (const auto& p : all)
    if (p.d >= grid_.exclusion_radius) points_.push_back(p);
  if (points_.empty()) throw Error(ErrorCode::estimation, "effective grid is empty");

  // SC pairs may include minimizers; they only need x != y.
  if (d == 1) {
    const std::size_t n = all.size();
    std::vector<std::size_t> sub;
    const auto& base = axis_points(grid_.low[0], grid_.high[0], std::max(2, grid_.pair_samples));
    for (double t : base) {
      auto it = std::lower_bound(all.begin(), all.end(), t,
                                 [](const Point& p, double v) { return p.x[0] < v; });
      std::size_t i = static_cast<std::size_t>(it - all.begin());
      if (i == n) i = n - 1;
      if (i > 0 && std::abs(all[i - 1].x[0] - t) < std::abs(all[i].x[0] - t)) --i;
      sub.push_back(i);
    }
    for (double k : obj.kinks())
      for (std::size_t i = 0; i < n; ++i)
        if (all[i].x[0] == k) sub.push_back(i);
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    for (std::size_t a : sub)
      for (std::size_t b : sub)
        if (a != b) pairs_.emplace_back(a, b);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      pairs_.emplace_back(i, i + 1);
      pairs_.emplace_back(i + 1, i);
    }
  } else {
    const std::size_t n = all.size();
    std::mt19937_64 rng(grid_.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int k = 0; k < grid_.pair_samples; ++k) {
      std::size_t a = pick(rng), b = pick(rng);
      if (a != b) pairs_.emplace_back(a, b);
    }
    std::size_t stride = 1;
    for (int i = d - 1; i >= 0; --i) {
      const std::size_t m = axes[static_cast<std::size_t>(i)].size();
      for (std::size_t a = 0; a < n; ++a)
        if ((a / stride) % m + 1 < m) {
          pairs_.emplace_back(a, a + stride);
          pairs_.emplace_back(a + stride, a);
        }
      stride *= m;
    }
  }
  pair_pts_ = std::move(all);
}

Estimate estimate_constant(ConditionKind kind, const SampledObjective& sample) {
  const auto& obj = sample.objective();
  const double fs = obj.f_star();
  Estimate est{{kind, kind.is_lower() ? kInf : -kInf}, Vec(), std::nullopt, 0};

  if (kind.family == Family::SC) {
    const auto& pts = sample.pair_points();
    const auto& pairs = sample.pairs();
    if (pairs.empty()) throw Error(ErrorCode::estimation, "no SC pairs");
    std::vector<double> r(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        r[i] = terms(Family::SC, pts[pairs[i].first], fs, &pts[pairs[i].second]).ratio();
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
      if (better(r[i], r[best], kind.side)) best = i;
    est.constant.value = r[best];
    est.x = pts[pairs[best].first].x;
    est.y = pts[pairs[best].second].x;
    return est;
  }

  const auto& pts = sample.points();
  std::vector<double> r(pts.size());
  parallel_for(pts.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) r[i] = terms(kind.family, pts[i], fs, nullptr).ratio();
  });
  bool skip_infinite = kind.family == Family::PL && kind.side == Side::upper && obj.has_plateau();
  std::size_t best = pts.size();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::isinf(r[i])) {
      ++est.infinite_points;
      if (skip_infinite) continue;
    }
    if (best == pts.size() || better(r[i], r[best], kind.side)) best = i;
  }
  if (best == pts.size()) throw Error(ErrorCode::estimation, "no finite ratio on grid");
  est.constant.value = r[best];
  est.x = pts[best].x;

  const bool can_refine = sample.grid().refine && obj.dimension() == 1 && std::isfinite(r[best]);
  if (can_refine) {
    double a = pts[best > 0 ? best - 1 : best].x[0];
    double b = pts[best + 1 < pts.size() ? best + 1 : best].x[0];
    if (a < b) {
      auto [t, v] = golden_refine(kind, obj, a, b, sample.grid().exclusion_radius);
      if (std::isfinite(v) && better(v, est.constant.value, kind.side)) {
        est.constant.value = v;
        est.x = vec1(t);
      }
    }
  }
  return est;
}

Estimate estimate_constant(ConditionKind kind, const Objective& obj, const EstimationGrid& grid) {
  return estimate_constant(kind, SampledObjective(obj, grid));
}

std::vector<Estimate> estimate_all(const SampledObjective& sample) {
  std::vector<Estimate> out;
  for (auto k : all_kinds()) out.push_back(estimate_constant(k, sample));
  return out;
}

Verdict verify_membership(const SampledObjective& sample, const ConditionConstant& c, double tol) {
  const auto& obj = sample.objective();
  const double fs = obj.f_star();
  Verdict v;
  v.margin = kInf;
  if (c.kind.family == Family::SC) {
    const auto& pts = sample.pair_points();
    for (const auto& [a, b] : sample.pairs()) {
      double s = terms(Family::SC, pts[a], fs, &pts[b]).slack(c.value, c.kind.side);
      if (s < v.margin) {
        v.margin = s;
        v.worst_x = pts[a].x;
        v.worst_y = pts[b].x;
      }
    }
  } else {
    bool skip_infinite = c.kind.family == Family::PL && c.kind.side == Side::upper && obj.has_plateau();
    for (const auto& p : sample.points()) {
      RatioTerms t = terms(c.kind.family, p, fs, nullptr);
      if (skip_infinite && t.denominator <= 0.0) continue;
      double s = t.slack(c.value, c.kind.side);
      if (s < v.margin) {
        v.margin = s;
        v.worst_x = p.x;
      }
    }
  }
  v.holds = v.margin >= -tol;
  return v;
}

Verdict verify_membership(const Objective& obj, const ConditionConstant& c,
                          const EstimationGrid& grid, double tol) {
  return verify_membership(SampledObjective(obj, grid), c, tol);
}

}  // namespace condnum
