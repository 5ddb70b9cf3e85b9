#include "condnum/objective.hpp"

#include <cmath>

namespace condnum {

Objective::Objective(std::string label, int dimension, ValueFn value, GradientFn gradient,
                     MinimizerSet minimizers, double f_star, Options options)
    : label_(std::move(label)),
      dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      minimizers_(std::move(minimizers)),
      f_star_(f_star),
      options_(std::move(options)) {
  if (dimension_ <= 0) throw Error(ErrorCode::invalid_objective, label_ + ": dimension must be > 0");
  if (minimizers_.dimension() != dimension_)
    throw Error(ErrorCode::invalid_objective, label_ + ": minimizer set dimension mismatch");
  if (!std::isfinite(f_star_)) throw Error(ErrorCode::invalid_objective, label_ + ": f* not finite");
  if (!value_ || !gradient_) throw Error(ErrorCode::invalid_objective, label_ + ": missing callable");
}

Objective make_piecewise_1d(std::string label, const PiecewisePoly& f, double minimizer,
                            double f_star, Objective::Options options) {
  PiecewisePoly df = f.derivative();
  options.kinks = f.breaks();
  return Objective(
      std::move(label), 1, [f](const Vec& x) { return f(x[0]); },
      [df](const Vec& x) { return vec1(df(x[0])); }, MinimizerSet::point(vec1(minimizer)),
      f_star, std::move(options));
}

Objective compose(const Objective& f, std::function<double(double)> g,
                  std::function<double(double)> gprime, std::string label) {
  Objective::Options opt;
  opt.kinks = f.kinks();
  opt.plateau = f.has_plateau();
  double fs = g(f.f_star());
  return Objective(
      std::move(label), f.dimension(), [f, g](const Vec& x) { return g(f.value(x)); },
      [f, gprime](const Vec& x) -> Vec { return gprime(f.value(x)) * f.gradient(x); },
      f.minimizers(), fs, std::move(opt));
}

}  // namespace condnum
