#pragma once

#include "condnum/conditions.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace condnum {

struct ImplicationEdge {
  std::string id;  // e.g. "*SC-&QG-->RSI-"
  std::vector<ConditionKind> sources;
  ConditionKind target;
  std::string formula;  // human-readable conversion, in source order
  // Source positions whose constant may be <= 0 (extended convexity).
  std::vector<std::size_t> nonpositive_ok;
  std::function<double(std::span<const double>)> convert;
};

struct ExcludedEdge {
  std::string id;
  std::string formula;
  std::string reason;
};

const std::vector<ImplicationEdge>& builtin_edges();
const std::vector<ExcludedEdge>& excluded_edges();
const ImplicationEdge& find_edge(const std::string& id);

// Throws kind_mismatch or conversion_domain.
ConditionConstant apply_edge(const ImplicationEdge& edge, std::span<const ConditionConstant> constants);

struct EdgeReport {
  std::string edge_id;
  std::string objective_label;
  std::vector<ConditionConstant> sources;
  std::optional<ConditionConstant> converted;
  enum class Status { holds, violated, not_applicable } status = Status::not_applicable;
  double margin = 0.0;
  std::string note;
};

std::string to_string(EdgeReport::Status s);

EdgeReport verify_edge(const ImplicationEdge& edge, const SampledObjective& sample, double tol);
EdgeReport verify_edge(const ImplicationEdge& edge, const Objective& obj, const EstimationGrid& grid,
                       double tol);
// Same, with the twelve source estimates supplied by the caller.
EdgeReport verify_edge(const ImplicationEdge& edge, const SampledObjective& sample,
                       const ConstantTable& estimates, double tol);

// Fixed point of all edges, keeping the best constant per kind. Extras seed
// SC-(0) (convex) and *SC-(0) (star-convex).
ConstantTable closure(const ConstantTable& initial, Extra extra = Extra::none);
std::vector<ConditionConstant> closure(std::span<const ConditionConstant> initial,
                                       Extra extra = Extra::none);
// Strongest side assumption certified by the table's SC- / *SC- constants.
Extra implied_extra(const ConstantTable& table);

std::string edges_json();

}  // namespace condnum
