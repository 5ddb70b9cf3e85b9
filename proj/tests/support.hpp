#pragma once

#include "condnum/common.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace condnum::test {

// Small seeded generator for property checks.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  Vec vec(int d, double a, double b) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform(a, b);
    return v;
  }
  Vec unit(int d) {
    Vec v(d);
    std::normal_distribution<double> n;
    do {
      for (int i = 0; i < d; ++i) v[i] = n(rng_);
    } while (v.norm() < 1e-3);
    return v / v.norm();
  }

 private:
  std::mt19937_64 rng_;
};

// Runs `body(gen)` for `cases` seeds; failures carry the seed.
template <class Body>
void for_all(int cases, Body body, std::uint64_t base_seed = 2024) {
  for (int c = 0; c < cases; ++c) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(c);
    SCOPED_TRACE("seed=" + std::to_string(seed));
    Gen g(seed);
    body(g);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace condnum::test
