#include "condnum/corpus.hpp"

#include <cmath>

namespace condnum {
namespace {

std::string fmt_num(double v) { return format_double(v); }

ConstantTable uniform_constants(double lower, double upper) {
  ConstantTable t;
  for (auto k : all_kinds()) t[k] = k.is_lower() ? lower : upper;
  return t;
}

}  // namespace

Objective make_quadratic(const Vec& eigenvalues, const Vec& center) {
  if (eigenvalues.size() == 0 || eigenvalues.size() != center.size())
    throw Error(ErrorCode::invalid_objective, "quadratic: dimension mismatch");
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (!(eigenvalues[i] > 0.0))
      throw Error(ErrorCode::invalid_objective, "quadratic: eigenvalues must be positive");
  std::string label = "quadratic:";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    label += (i ? "," : "") + fmt_num(eigenvalues[i]);
  if (!center.isZero(0.0)) {
    label += "@";
    for (Eigen::Index i = 0; i < center.size(); ++i) label += (i ? "," : "") + fmt_num(center[i]);
  }
  Objective::Options opt;
  opt.analytic_constants = uniform_constants(eigenvalues.minCoeff(), eigenvalues.maxCoeff());
  const Vec lam = eigenvalues;
  const Vec c = center;
  return Objective(
      label, static_cast<int>(lam.size()),
      [lam, c](const Vec& x) { return 0.5 * (lam.array() * (x - c).array().square()).sum(); },
      [lam, c](const Vec& x) -> Vec { return (lam.array() * (x - c).array()).matrix(); },
      MinimizerSet::point(c), 0.0, std::move(opt));
}

Objective make_quadratic(const Vec& eigenvalues) {
  return make_quadratic(eigenvalues, Vec::Zero(eigenvalues.size()));
}

PiecewisePoly f_lrp_derivative() {
  return PiecewisePoly({1.0, 2.0}, {Poly{{0.0, 25.0}}, Poly{{24.0, 1.0}}, Poly{{-24.0, 25.0}}});
}

Objective make_f_lrp() {
  Objective::Options opt;
  auto& t = opt.analytic_constants;
  for (Family f : kFamilies) t[{f, Side::upper}] = 25.0;
  t[{Family::SC, Side::lower}] = 1.0;
  t[{Family::StarSC, Side::lower}] = 7.0;
  t[{Family::RSI, Side::lower}] = 13.0;
  t[{Family::EB, Side::lower}] = 13.0;
  t[{Family::PL, Side::lower}] = 169.0 / 19.0;
  // inf of 2f/x^2 is attained at x = 3, where f = 76.5.
  t[{Family::QG, Side::lower}] = 17.0;
  auto f = PiecewisePoly::integrate(f_lrp_derivative(), 0.0, 0.0);
  return make_piecewise_1d("f_lrp", f, 0.0, 0.0, std::move(opt));
}

PiecewisePoly f_eps_derivative(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw Error(ErrorCode::invalid_parameter, "f_eps: eps must be > 0");
  const double e2 = eps * eps;
  return PiecewisePoly({1.0, 1.0 + e2}, {Poly{{0.0, 2.0}}, Poly{{-2.0 / eps, 2.0 + 2.0 / eps}},
                                         Poly{{2.0 * eps, 2.0}}});
}

Objective make_f_eps(double eps) {
  auto df = f_eps_derivative(eps);
  Objective::Options opt;
  opt.analytic_constants[{Family::SC, Side::lower}] = 2.0;
  opt.analytic_constants[{Family::SC, Side::upper}] = 2.0 + 2.0 / eps;
  auto f = PiecewisePoly::integrate(df, 0.0, 0.0);
  return make_piecewise_1d("f_eps:" + fmt_num(eps), f, 0.0, 0.0, std::move(opt));
}

Objective make_smooth_abs() {
  Objective::Options opt;
  opt.analytic_constants[{Family::SC, Side::upper}] = 1.0;
  opt.analytic_constants[{Family::SC, Side::lower}] = 0.0;
  return Objective(
      "smooth_abs", 1,
      [](const Vec& x) {
        double t = x[0];
        return t * t / (std::sqrt(t * t + 1.0) + 1.0);
      },
      [](const Vec& x) { return vec1(x[0] / std::sqrt(x[0] * x[0] + 1.0)); },
      MinimizerSet::point(vec1(0.0)), 0.0, std::move(opt));
}

Objective make_cubic_ramp() {
  PiecewisePoly df({1.0, 2.0}, {Poly{{0.0}}, Poly{{3.0, -6.0, 3.0}}, Poly{{3.0}}});
  auto f = PiecewisePoly::integrate(df, 0.0, 0.0);
  return make_piecewise_1d("cubic_ramp", f, 0.0, 0.0, {});
}

PiecewisePoly plateau_derivative(double eps, double eta) {
  if (!(eps > 0.0) || !(eta > 0.0))
    throw Error(ErrorCode::invalid_parameter, "plateau: eps and eta must be > 0");
  const double a = 1.0 + eps;
  const double b = a + eta;
  return PiecewisePoly({1.0, a, b},
                       {Poly{{0.0, 1.0}}, Poly{{a / eps, -1.0 / eps}}, Poly{{0.0}}, Poly{{-b, 1.0}}});
}

Objective make_plateau(double eps, double eta) {
  auto df = plateau_derivative(eps, eta);
  const double a = 1.0 + eps;
  const double b = a + eta;
  Objective::Options opt;
  opt.plateau = true;
  opt.analytic_constants[{Family::SC, Side::upper}] = 1.0;
  opt.analytic_constants[{Family::SC, Side::lower}] = -1.0 / eps;
  opt.analytic_constants[{Family::QG, Side::lower}] = a / (b * b + a);
  auto f = PiecewisePoly::integrate(df, 0.0, 0.0);
  return make_piecewise_1d("plateau:" + fmt_num(eps) + "," + fmt_num(eta), f, 0.0, 0.0,
                           std::move(opt));
}

Objective make_sqdist(const MinimizerSet& set) {
  if (set.shape() == MinimizerSet::Shape::point)
    throw Error(ErrorCode::invalid_objective, "sqdist: use make_quadratic for a point");
  std::string label = set.shape() == MinimizerSet::Shape::box ? "box:" : "segment:";
  for (Eigen::Index i = 0; i < set.first().size(); ++i)
    label += (i ? "," : "") + fmt_num(set.first()[i]) + "," + fmt_num(set.second()[i]);
  Objective::Options opt;
  opt.analytic_constants = uniform_constants(1.0, 1.0);
  opt.analytic_constants[{Family::SC, Side::lower}] = 0.0;
  if (set.dimension() == 1) {
    opt.kinks = {set.first()[0], set.second()[0]};
    if (opt.kinks[0] > opt.kinks[1]) std::swap(opt.kinks[0], opt.kinks[1]);
  }
  return Objective(
      label, set.dimension(),
      [set](const Vec& x) { return 0.5 * (x - set.project(x)).squaredNorm(); },
      [set](const Vec& x) -> Vec { return x - set.project(x); }, set, 0.0, std::move(opt));
}

}  // namespace condnum
