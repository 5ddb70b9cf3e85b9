#include "condnum/minimizer_set.hpp"

#include <algorithm>

namespace condnum {

MinimizerSet MinimizerSet::point(Vec p) {
  Vec copy = p;
  return MinimizerSet(Shape::point, std::move(p), std::move(copy));
}

MinimizerSet MinimizerSet::box(Vec low, Vec high) {
  if (low.size() != high.size() || low.size() == 0)
    throw Error(ErrorCode::invalid_parameter, "box: dimension mismatch");
  for (Eigen::Index i = 0; i < low.size(); ++i)
    if (!(low[i] <= high[i])) throw Error(ErrorCode::invalid_parameter, "box: low > high");
  return MinimizerSet(Shape::box, std::move(low), std::move(high));
}

MinimizerSet MinimizerSet::segment(Vec a, Vec b) {
  if (a.size() != b.size() || a.size() == 0)
    throw Error(ErrorCode::invalid_parameter, "segment: dimension mismatch");
  return MinimizerSet(Shape::segment, std::move(a), std::move(b));
}

Vec MinimizerSet::project_once(const Vec& x) const {
  switch (shape_) {
    case Shape::point:
      return a_;
    case Shape::box:
      return x.cwiseMax(a_).cwiseMin(b_);
    case Shape::segment: {
      Vec dir = b_ - a_;
      double len2 = dir.squaredNorm();
      if (len2 == 0.0) return a_;
      double t = std::clamp((x - a_).dot(dir) / len2, 0.0, 1.0);
      if (t == 0.0) return a_;
      if (t == 1.0) return b_;
      return a_ + t * dir;
    }
  }
  return a_;
}

Vec MinimizerSet::project(const Vec& x) const {
  Vec p = project_once(x);
  if (shape_ != Shape::segment) return p;
  // Rounding can move a segment projection by an ulp; iterate to a fixed
  // point so projection is exactly idempotent.
  for (int i = 0; i < 8; ++i) {
    Vec q = project_once(p);
    if (q == p) break;
    p = std::move(q);
  }
  return p;
}

double MinimizerSet::distance(const Vec& x) const {
  if (shape_ == Shape::point) return (x - a_).norm();
  return (x - project(x)).norm();
}

std::vector<Vec> MinimizerSet::sample_points() const {
  switch (shape_) {
    case Shape::point:
      return {a_};
    case Shape::segment:
      return {a_, b_, project(0.5 * (a_ + b_))};
    case Shape::box: {
      std::vector<Vec> out;
      const int d = dimension();
      if (d <= 10) {
        for (long mask = 0; mask < (1L << d); ++mask) {
          Vec c = a_;
          for (int i = 0; i < d; ++i)
            if (mask & (1L << i)) c[i] = b_[i];
          out.push_back(c);
        }
      }
      out.push_back(0.5 * (a_ + b_));
      return out;
    }
  }
  return {a_};
}

bool MinimizerSet::operator==(const MinimizerSet& other) const {
  return shape_ == other.shape_ && a_.size() == other.a_.size() && a_ == other.a_ &&
         b_ == other.b_;
}

}  // namespace condnum
