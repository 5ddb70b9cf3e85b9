#pragma once

#include "condnum/common.hpp"
#include "condnum/condition_kind.hpp"
#include "condnum/minimizer_set.hpp"
#include "condnum/piecewise.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace condnum {

class Objective {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&)>;

  struct Options {
    ConstantTable analytic_constants;
    std::vector<double> kinks;  // 1-D breakpoints of piecewise definitions
    bool plateau = false;       // flat non-minimal region; see PL+ estimation
  };

  Objective(std::string label, int dimension, ValueFn value, GradientFn gradient,
            MinimizerSet minimizers, double f_star, Options options);
  Objective(std::string label, int dimension, ValueFn value, GradientFn gradient,
            MinimizerSet minimizers, double f_star)
      : Objective(std::move(label), dimension, std::move(value), std::move(gradient),
                  std::move(minimizers), f_star, Options{}) {}

  double value(const Vec& x) const { return value_(x); }
  Vec gradient(const Vec& x) const { return gradient_(x); }

  int dimension() const { return dimension_; }
  const std::string& label() const { return label_; }
  const MinimizerSet& minimizers() const { return minimizers_; }
  double f_star() const { return f_star_; }
  const ConstantTable& analytic_constants() const { return options_.analytic_constants; }
  const std::vector<double>& kinks() const { return options_.kinks; }
  bool has_plateau() const { return options_.plateau; }

  double distance(const Vec& x) const { return minimizers_.distance(x); }

 private:
  std::string label_;
  int dimension_;
  ValueFn value_;
  GradientFn gradient_;
  MinimizerSet minimizers_;
  double f_star_;
  Options options_;
};

// 1-D objective from a piecewise polynomial value function.
Objective make_piecewise_1d(std::string label, const PiecewisePoly& f, double minimizer,
                            double f_star, Objective::Options options);

// g o f for a scalar map g with derivative gprime; minimizers are kept,
// f_star becomes g(f_star).
Objective compose(const Objective& f, std::function<double(double)> g,
                  std::function<double(double)> gprime, std::string label);

}  // namespace condnum
