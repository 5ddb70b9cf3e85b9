#pragma once

#include "condnum/objective.hpp"

#include <cstdint>
#include <vector>

namespace condnum {

struct LogisticDataset {
  std::vector<Vec> samples;  // Z = Y * X
  int dimension = 0;
  std::uint64_t seed = 0;

  // Gaussian features, planted direction, 10% label flips.
  static LogisticDataset synthetic(std::uint64_t seed, int dimension, int m,
                                   double flip_probability = 0.1);

  // Some sample has positive inner product with each of `directions` random unit vectors.
  bool spans(int directions = 64, std::uint64_t probe_seed = 7) const;
};

struct LogisticMinimizer {
  Vec point;
  double value;
  double gradient_norm;
  long iterations;
};

double logistic_value(const LogisticDataset& data, const Vec& w);
Vec logistic_gradient(const LogisticDataset& data, const Vec& w);
// (1/4m) sum ||Z||^2
double logistic_smoothness_bound(const LogisticDataset& data);

// GD with step 1/L_hat until the gradient norm drops below 1e-12 or 1e6 iterations.
LogisticMinimizer logistic_reference_minimizer(const LogisticDataset& data);

// Throws degenerate_dataset if the span check fails.
Objective make_logistic(const LogisticDataset& data, std::string label = "logistic");

}  // namespace condnum
