#pragma once

#include "condnum/common.hpp"

#include <vector>

namespace condnum {

// Convex set of global minimizers: a point, an axis-aligned box, or a segment.
class MinimizerSet {
 public:
  enum class Shape { point, box, segment };

  static MinimizerSet point(Vec p);
  static MinimizerSet box(Vec low, Vec high);
  static MinimizerSet segment(Vec a, Vec b);

  Shape shape() const { return shape_; }
  int dimension() const { return static_cast<int>(a_.size()); }

  Vec project(const Vec& x) const;
  double distance(const Vec& x) const;
  bool contains(const Vec& x) const { return distance(x) == 0.0; }

  // Representative points of the set (the point; box corners and center;
  // segment endpoints and midpoint).
  std::vector<Vec> sample_points() const;
  // Nearest point to the origin.
  Vec anchor() const { return project(Vec::Zero(dimension())); }

  const Vec& first() const { return a_; }
  const Vec& second() const { return b_; }

  bool operator==(const MinimizerSet& other) const;

 private:
  MinimizerSet(Shape s, Vec a, Vec b) : shape_(s), a_(std::move(a)), b_(std::move(b)) {}
  Vec project_once(const Vec& x) const;

  Shape shape_;
  Vec a_;
  Vec b_;
};

}  // namespace condnum
