#include "condnum/starnorm.hpp"

#include "condnum/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace condnum {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Perturbation::Kinks axis_kinks(int dimension, std::vector<double> offsets) {
  Vec axis = Vec::Zero(dimension);
  axis[0] = 1.0;
  return {Vec::Zero(dimension), axis, std::move(offsets)};
}

double ratio_at(const Perturbation& h, const Vec& x, double exclusion) {
  double d = h.anchor_set().distance(x);
  if (d < exclusion) return -kInf;
  return h.gradient(x).norm() / d;
}

// Maximizes phi on [a, b] by golden-section search.
std::pair<double, double> golden_max(const std::function<double(double)>& phi, double a, double b) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 50; ++it) {
    if (fc > fd) {
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
  return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

std::vector<Vec> lattice(const EstimationGrid& grid, const std::vector<double>& kinks_1d) {
  const int d = static_cast<int>(grid.low.size());
  const int n = grid.points_per_axis;
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < n; ++k)
      axes[static_cast<std::size_t>(i)].push_back(
          k == n - 1 ? grid.high[i] : grid.low[i] + (grid.high[i] - grid.low[i]) * k / (n - 1.0));
  if (d == 1) {
    auto& ax = axes[0];
    const double snap = 1e-9 * (grid.high[0] - grid.low[0]) / (n - 1);
    for (double k : kinks_1d) {
      if (!(k > grid.low[0] && k < grid.high[0])) continue;
      std::erase_if(ax, [&](double t) { return std::abs(t - k) < snap; });
      ax.push_back(k);
    }
    std::sort(ax.begin(), ax.end());
  }
  std::size_t total = 1;
  for (const auto& ax : axes) total *= ax.size();
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t m = 0; m < total; ++m) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    out.push_back(std::move(x));
    for (int i = d - 1; i >= 0; --i) {
      auto& k = idx[static_cast<std::size_t>(i)];
      if (++k < axes[static_cast<std::size_t>(i)].size()) break;
      k = 0;
    }
  }
  return out;
}

bool on_boundary(const Vec& x, const EstimationGrid& grid) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] == grid.low[i] || x[i] == grid.high[i]) return true;
  return false;
}

}  // namespace

Perturbation::Perturbation(std::string label, int dimension, ValueFn value, GradientFn gradient,
                           MinimizerSet anchor, Kinks kinks, Validation validation)
    : label_(std::move(label)),
      dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      anchor_(std::move(anchor)),
      kinks_(std::move(kinks)) {
  if (dimension_ <= 0 || anchor_.dimension() != dimension_)
    throw Error(ErrorCode::invalid_perturbation, label_ + ": dimension mismatch");
  if (kinks_.axis.size() == 0) kinks_ = axis_kinks(dimension_, {});
  if (validation == Validation::eager) validate();
}

double Perturbation::kink_distance(const Vec& x) const {
  if (kinks_.offsets.empty()) return kInf;
  double an = kinks_.axis.norm();
  double t = (x - kinks_.origin).dot(kinks_.axis) / (an * an);
  double best = kInf;
  for (double k : kinks_.offsets) best = std::min(best, std::abs(t - k) * an);
  return best;
}

std::vector<double> Perturbation::kinks_1d() const {
  std::vector<double> out;
  if (dimension_ != 1) return out;
  for (double k : kinks_.offsets) out.push_back(kinks_.origin[0] + k * kinks_.axis[0]);
  std::sort(out.begin(), out.end());
  return out;
}

void Perturbation::validate() const {
  for (const auto& p : anchor_.sample_points()) {
    double v = value_(p);
    if (!(std::abs(v) <= 1e-12))
      throw Error(ErrorCode::invalid_perturbation, label_ + ": h does not vanish on X*");
  }
  EstimationGrid grid = default_grid(anchor_);
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int attempt = 0; attempt < 1000 && checked < 100; ++attempt) {
    Vec x(dimension_);
    for (int i = 0; i < dimension_; ++i)
      x[i] = std::uniform_real_distribution<double>(grid.low[i], grid.high[i])(rng);
    if (kink_distance(x) < 1e-3 + 1e-5) continue;
    Vec g = gradient_(x);
    for (int i = 0; i < dimension_; ++i) {
      Vec e = Vec::Zero(dimension_);
      e[i] = 1e-5;
      double fd = (value_(x + e) - value_(x - e)) / 2e-5;
      if (!(std::abs(fd - g[i]) / (1.0 + std::abs(g[i])) < 1e-6))
        throw Error(ErrorCode::invalid_perturbation, label_ + ": gradient does not match values");
    }
    ++checked;
  }
  StarNorm sn = star_norm(*this, grid);
  if (!std::isfinite(sn.value) || sn.unbounded)
    throw Error(ErrorCode::invalid_perturbation, label_ + ": gradient not bounded by a multiple of d(x, X*)");
}

Perturbation Perturbation::scaled(double c) const {
  auto v = value_;
  auto g = gradient_;
  return Perturbation(
      format_double(c) + "*" + label_, dimension_, [v, c](const Vec& x) { return c * v(x); },
      [g, c](const Vec& x) -> Vec { return c * g(x); }, anchor_, kinks_, Validation::skip);
}

Perturbation Perturbation::plus(const Perturbation& other) const {
  if (!(anchor_ == other.anchor_))
    throw Error(ErrorCode::incompatible_perturbation, "sum of perturbations with different anchors");
  auto v1 = value_, v2 = other.value_;
  auto g1 = gradient_, g2 = other.gradient_;
  Kinks k = kinks_;
  if (dimension_ == 1) {
    k = axis_kinks(1, kinks_1d());
    for (double t : other.kinks_1d()) k.offsets.push_back(t);
  }
  return Perturbation(
      label_ + "+" + other.label_, dimension_, [v1, v2](const Vec& x) { return v1(x) + v2(x); },
      [g1, g2](const Vec& x) -> Vec { return g1(x) + g2(x); }, anchor_, std::move(k),
      Validation::skip);
}

EstimationGrid default_grid(const MinimizerSet& anchor) {
  Vec c = anchor.anchor();
  return EstimationGrid::centered(c, c.size() == 1 ? 5.0 : 3.0, c.size() == 1 ? 20001 : 41);
}

StarNorm star_norm(const Perturbation& h) { return star_norm(h, default_grid(h.anchor_set())); }

StarNorm star_norm(const Perturbation& h, const EstimationGrid& grid) {
  if (grid.low.size() != h.dimension())
    throw Error(ErrorCode::estimation, "grid dimension does not match perturbation");
  if (!(grid.exclusion_radius > 0.0)) throw Error(ErrorCode::estimation, "exclusion_radius must be > 0");
  const double excl = grid.exclusion_radius;
  std::vector<Vec> xs = lattice(grid, h.kinks_1d());
  std::vector<double> r(xs.size());
  parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) r[i] = ratio_at(h, xs[i], excl);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] > r[best]) best = i;
  if (!(r[best] > -kInf)) throw Error(ErrorCode::estimation, "effective grid is empty");

  StarNorm out{r[best], xs[best], false};
  if (grid.refine && std::isfinite(out.value) && out.value > 0.0) {
    const int d = h.dimension();
    if (d == 1) {
      double a = best > 0 ? xs[best - 1][0] : xs[best][0];
      double b = best + 1 < xs.size() ? xs[best + 1][0] : xs[best][0];
      if (a < b) {
        auto [t, v] = golden_max([&](double s) { return ratio_at(h, vec1(s), excl); }, a, b);
        if (v > out.value) out = {v, vec1(t), false};
      }
    } else {
      for (int sweep = 0; sweep < 2; ++sweep)
        for (int i = 0; i < d; ++i) {
          double step = (grid.high[i] - grid.low[i]) / (grid.points_per_axis - 1);
          Vec base = out.argmax;
          auto phi = [&](double s) {
            Vec y = base;
            y[i] = s;
            return ratio_at(h, y, excl);
          };
          auto [t, v] = golden_max(phi, base[i] - step, base[i] + step);
          if (v > out.value) {
            out.value = v;
            out.argmax[i] = t;
          }
        }
    }
  }

  // Growth check: push each boundary point out to twice its distance from X*.
  double beyond = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!on_boundary(xs[i], grid) || !std::isfinite(r[i])) continue;
    Vec p = h.anchor_set().project(xs[i]);
    double v = ratio_at(h, p + 2.0 * (xs[i] - p), excl);
    beyond = std::max(beyond, v);
  }
  if (!std::isfinite(out.value) || beyond > 1.01 * out.value + 1e-300) out.unbounded = true;
  return out;
}

PiecewisePoly omega_eps_profile(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw Error(ErrorCode::invalid_parameter, "omega_eps: eps must lie in (0, 1)");
  const double e2 = eps * eps;
  PiecewisePoly d({1.0 - e2, 1.0, 1.0 + e2},
                  {Poly{{0.0}}, Poly{{(1.0 - e2) / eps, -1.0 / eps}},
                   Poly{{-(1.0 + e2) / eps, 1.0 / eps}}, Poly{{0.0}}});
  return PiecewisePoly::integrate(d, 0.0, 0.0);
}

Perturbation make_omega_eps(double eps, const Vec& direction, const Vec& x_star) {
  PiecewisePoly w = omega_eps_profile(eps);
  if (direction.size() != x_star.size() || std::abs(direction.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::invalid_parameter, "omega_eps: direction must be a unit vector");
  PiecewisePoly dw = w.derivative();
  const Vec u = direction;
  const Vec c = x_star;
  return Perturbation(
      "omega_eps:" + format_double(eps), static_cast<int>(u.size()),
      [w, u, c](const Vec& x) { return w((x - c).dot(u)); },
      [dw, u, c](const Vec& x) -> Vec { return dw((x - c).dot(u)) * u; }, MinimizerSet::point(c),
      {c, u, w.breaks()});
}

Perturbation as_perturbation(const Objective& h) {
  return Perturbation(
      h.label(), h.dimension(), [h](const Vec& x) { return h.value(x); },
      [h](const Vec& x) { return h.gradient(x); }, h.minimizers(),
      axis_kinks(h.dimension(), h.kinks()));
}

Perturbation diff_as_perturbation(const Objective& f, const Objective& g) {
  if (f.dimension() != g.dimension() || !(f.minimizers() == g.minimizers()))
    throw Error(ErrorCode::incompatible_perturbation, "diff: minimizer sets differ");
  if (std::abs(f.f_star() - g.f_star()) > 1e-12)
    throw Error(ErrorCode::incompatible_perturbation, "diff: f* values differ");
  std::vector<double> kinks = f.kinks();
  kinks.insert(kinks.end(), g.kinks().begin(), g.kinks().end());
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  return Perturbation(
      "diff:" + g.label() + "-" + f.label(), f.dimension(),
      [f, g](const Vec& x) { return g.value(x) - f.value(x); },
      [f, g](const Vec& x) -> Vec { return g.gradient(x) - f.gradient(x); }, f.minimizers(),
      axis_kinks(f.dimension(), std::move(kinks)));
}

Objective perturb(const Objective& f, const Perturbation& h) {
  if (f.dimension() != h.dimension() || !(f.minimizers() == h.anchor_set()))
    throw Error(ErrorCode::incompatible_perturbation, "perturb: anchor set differs from X*");
  Objective::Options opt;
  opt.kinks = f.kinks();
  for (double k : h.kinks_1d()) opt.kinks.push_back(k);
  std::sort(opt.kinks.begin(), opt.kinks.end());
  opt.kinks.erase(std::unique(opt.kinks.begin(), opt.kinks.end()), opt.kinks.end());
  Objective out(
      f.label() + "+" + h.label(), f.dimension(),
      [f, h](const Vec& x) { return f.value(x) + h.value(x); },
      [f, h](const Vec& x) -> Vec { return f.gradient(x) + h.gradient(x); }, f.minimizers(),
      f.f_star(), std::move(opt));

  for (const auto& p : out.minimizers().sample_points())
    if (std::abs(out.value(p) - out.f_star()) > 1e-12 || out.gradient(p).norm() > 1e-12)
      throw Error(ErrorCode::perturbation_changes_minimizers, out.label() + ": X* no longer minimal");
  EstimationGrid grid = default_grid(out.minimizers());
  auto xs = lattice(grid, out.kinks());
  std::vector<char> bad(xs.size(), 0);
  parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double gap = out.value(xs[i]) - out.f_star();
      if (gap < -1e-12) bad[i] = 1;
      else if (out.distance(xs[i]) >= grid.exclusion_radius && gap <= 0.0) bad[i] = 1;
    }
  });
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (bad[i])
      throw Error(ErrorCode::perturbation_changes_minimizers,
                  out.label() + ": value at or below f* off X*");
  return out;
}

}  // namespace condnum
