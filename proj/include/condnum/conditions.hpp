#pragma once

#include "condnum/condition_kind.hpp"
#include "condnum/objective.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace condnum {

struct EstimationGrid {
  Vec low;
  Vec high;
  int points_per_axis = 0;
  double exclusion_radius = 1e-4;
  int pair_samples = 201;  // 1-D: sub-grid size; d-D: number of random pairs
  std::uint64_t seed = 12345;
  bool refine = true;      // golden-section refinement around 1-D extrema

  // [-5,5] with 20001 points in 1-D, [-3,3]^d with 41 points/axis otherwise,
  // shifted so the box is centered on the minimizer anchor.
  static EstimationGrid defaults_for(const Objective& obj);
  static EstimationGrid centered(const Vec& center, double half_width, int points_per_axis);

  std::string describe() const;
  void validate(const Objective& obj) const;
};

// The pieces of a defining ratio N/D; the inequality at constant c is
// scale*(N - c*D) >= 0 (lower) or scale*(c*D - N) >= 0 (upper).
struct RatioTerms {
  double numerator;
  double denominator;
  double scale;

  double ratio() const;
  double slack(double c, Side side) const;
};

RatioTerms ratio_terms(Family family, const Objective& obj, const Vec& x,
                       const std::optional<Vec>& y = std::nullopt);

// Throws excluded_point if x is in X* (or y == x for SC).
double defining_ratio(ConditionKind kind, const Objective& obj, const Vec& x,
                      const std::optional<Vec>& y = std::nullopt);

struct Estimate {
  ConditionConstant constant;
  Vec x;
  std::optional<Vec> y;  // second point for SC
  std::size_t infinite_points = 0;
};

struct Verdict {
  bool holds = true;
  double margin = 0.0;  // minimum slack; negative when violated
  Vec worst_x;
  std::optional<Vec> worst_y;
};

// Objective values and gradients cached on a grid, shared by all twelve kinds.
class SampledObjective {
 public:
  SampledObjective(const Objective& obj, const EstimationGrid& grid);

  const Objective& objective() const { return obj_; }
  const EstimationGrid& grid() const { return grid_; }

  struct Point {
    Vec x;
    double f;
    Vec g;
    Vec xp;
    double d;
  };
  const std::vector<Point>& points() const { return points_; }        // outside exclusion
  const std::vector<Point>& pair_points() const { return pair_pts_; }  // for SC pairs
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

 private:
  Objective obj_;
  EstimationGrid grid_;
  std::vector<Point> points_;
  std::vector<Point> pair_pts_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

Estimate estimate_constant(ConditionKind kind, const SampledObjective& sample);
Estimate estimate_constant(ConditionKind kind, const Objective& obj, const EstimationGrid& grid);
std::vector<Estimate> estimate_all(const SampledObjective& sample);

inline constexpr double kDefaultTol = 1e-9;

Verdict verify_membership(const SampledObjective& sample, const ConditionConstant& c,
                          double tol = kDefaultTol);
Verdict verify_membership(const Objective& obj, const ConditionConstant& c,
                          const EstimationGrid& grid, double tol = kDefaultTol);

}  // namespace condnum
