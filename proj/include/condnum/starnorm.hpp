#pragma once

#include "condnum/conditions.hpp"
#include "condnum/objective.hpp"
#include "condnum/piecewise.hpp"

#include <functional>
#include <string>
#include <vector>

namespace condnum {

// A member of F_{X*}: vanishes on the anchor set and has gradient bounded by a
// multiple of the distance to it.
class Perturbation {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&)>;

  // Breakpoints of a piecewise definition, as offsets t along phi(x) = <x - origin, axis>.
  struct Kinks {
    Vec origin;
    Vec axis;
    std::vector<double> offsets;
  };

  enum class Validation { eager, skip };

  Perturbation(std::string label, int dimension, ValueFn value, GradientFn gradient,
               MinimizerSet anchor, Kinks kinks, Validation validation = Validation::eager);

  double value(const Vec& x) const { return value_(x); }
  Vec gradient(const Vec& x) const { return gradient_(x); }
  const std::string& label() const { return label_; }
  int dimension() const { return dimension_; }
  const MinimizerSet& anchor_set() const { return anchor_; }
  const Kinks& kinks() const { return kinks_; }

  // Distance from x to the nearest breakpoint hyperplane (inf if none).
  double kink_distance(const Vec& x) const;
  // Breakpoints as x coordinates; 1-D only.
  std::vector<double> kinks_1d() const;

  Perturbation scaled(double c) const;
  Perturbation plus(const Perturbation& other) const;

 private:
  void validate() const;

  std::string label_;
  int dimension_;
  ValueFn value_;
  GradientFn gradient_;
  MinimizerSet anchor_;
  Kinks kinks_;
};

struct StarNorm {
  double value = 0.0;
  Vec argmax;
  bool unbounded = false;  // ratio still growing beyond the box
};

StarNorm star_norm(const Perturbation& h, const EstimationGrid& grid);
StarNorm star_norm(const Perturbation& h);  // default grid around the anchor set
EstimationGrid default_grid(const MinimizerSet& anchor);

// omega_eps profile with omega(0) = 0; derivative (1-t-eps^2)/eps on [1-eps^2, 1],
// (t-eps^2-1)/eps on [1, 1+eps^2], zero elsewhere.
PiecewisePoly omega_eps_profile(double eps);
Perturbation make_omega_eps(double eps, const Vec& direction, const Vec& x_star);

// Wraps an objective with f* = 0 on a singleton minimizer as a perturbation.
Perturbation as_perturbation(const Objective& h);

// h = g - f, anchored at f's minimizer set.
Perturbation diff_as_perturbation(const Objective& f, const Objective& g);

// f + h, re-validated on the default grid.
Objective perturb(const Objective& f, const Perturbation& h);

}  // namespace condnum
