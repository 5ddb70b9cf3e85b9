#include "condnum/logistic.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <random>

namespace condnum {
namespace {

// log(1 + exp(-t)) without overflow.
double softplus_neg(double t) { return std::log1p(std::exp(-std::abs(t))) + std::max(-t, 0.0); }

// 1 - sigma(t) = sigma(-t)
double sigma_neg(double t) {
  if (t >= 0) {
    double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

std::uint64_t fingerprint(const LogisticDataset& data) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  for (const auto& z : data.samples) mix(z.data(), sizeof(double) * static_cast<std::size_t>(z.size()));
  return h;
}

}  // namespace

LogisticDataset LogisticDataset::synthetic(std::uint64_t seed, int dimension, int m,
                                           double flip_probability) {
  if (dimension < 1 || m < 1) throw Error(ErrorCode::invalid_parameter, "logistic: need d >= 1, m >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vec w_true(dimension);
  for (int j = 0; j < dimension; ++j) w_true[j] = normal(rng);
  w_true.normalize();
  LogisticDataset out;
  out.dimension = dimension;
  out.seed = seed;
  out.samples.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Vec x(dimension);
    for (int j = 0; j < dimension; ++j) x[j] = normal(rng);
    double y = w_true.dot(x) >= 0.0 ? 1.0 : -1.0;
    if (unif(rng) < flip_probability) y = -y;
    out.samples.push_back(y * x);
  }
  return out;
}

bool LogisticDataset::spans(int directions, std::uint64_t probe_seed) const {
  std::mt19937_64 rng(probe_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < directions; ++k) {
    Vec w(dimension);
    for (int j = 0; j < dimension; ++j) w[j] = normal(rng);
    w.normalize();
    bool hit = false;
    for (const auto& z : samples)
      if (w.dot(z) > 0.0) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

double logistic_value(const LogisticDataset& data, const Vec& w) {
  double acc = 0.0;
  for (const auto& z : data.samples) acc += softplus_neg(w.dot(z));
  return acc / static_cast<double>(data.samples.size());
}

Vec logistic_gradient(const LogisticDataset& data, const Vec& w) {
  Vec g = Vec::Zero(data.dimension);
  for (const auto& z : data.samples) g -= sigma_neg(w.dot(z)) * z;
  return g / static_cast<double>(data.samples.size());
}

double logistic_smoothness_bound(const LogisticDataset& data) {
  double acc = 0.0;
  for (const auto& z : data.samples) acc += z.squaredNorm();
  return acc / (4.0 * static_cast<double>(data.samples.size()));
}

LogisticMinimizer logistic_reference_minimizer(const LogisticDataset& data) {
  static std::mutex mu;
  static std::map<std::uint64_t, LogisticMinimizer> cache;
  const std::uint64_t key = fingerprint(data);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double alpha = 1.0 / logistic_smoothness_bound(data);
  Vec w = Vec::Zero(data.dimension);
  Vec g = logistic_gradient(data, w);
  long k = 0;
  for (; k < 1000000 && g.norm() >= 1e-12; ++k) {
    w -= alpha * g;
    g = logistic_gradient(data, w);
  }
  LogisticMinimizer out{w, logistic_value(data, w), g.norm(), k};
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

Objective make_logistic(const LogisticDataset& data, std::string label) {
  if (data.samples.empty() || !data.spans())
    throw Error(ErrorCode::degenerate_dataset, "span condition fails on sampled directions");
  auto ref = logistic_reference_minimizer(data);
  auto shared = std::make_shared<const LogisticDataset>(data);
  return Objective(
      std::move(label), data.dimension,
      [shared](const Vec& w) { return logistic_value(*shared, w); },
      [shared](const Vec& w) { return logistic_gradient(*shared, w); },
      MinimizerSet::point(ref.point), ref.value);
}

}  // namespace condnum
