#pragma once

#include "condnum/condition_kind.hpp"
#include "condnum/optimize.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace condnum {

// One of the six directly proved GD rules.
struct BaseRule {
  std::string id;  // "SC+&SC-", ...
  ConditionKind upper;
  ConditionKind lower;
  Extra extra;
  std::function<double(double L, double mu)> step_size;
  std::function<double(double kappa)> rate;
  Lyapunov lyapunov;
};

const std::vector<BaseRule>& base_rules();
const BaseRule& find_base_rule(const std::string& id);

// A cell of the GD rate table.
struct TuningRule {
  ConditionKind upper;
  ConditionKind lower;
  Extra extra = Extra::none;
  std::string rate_id;                           // printed formula, e.g. "1-1/k^2"
  std::function<double(double kappa)> rate;      // printed formula
  const BaseRule* base = nullptr;
  // Constants the base proof is applied with, from the cell's (L, mu).
  std::function<std::pair<double, double>(double L, double mu)> to_base;
  std::vector<std::string> chain;  // conversions applied before the base proof

  bool is_base() const { return chain.empty() && to_base == nullptr; }
  double step_size(double L, double mu) const;
  double rate_for(double L, double mu) const { return rate(L / mu); }
  // Rate obtained by running the base proof on the converted constants.
  double derived_rate(double L, double mu) const;
  Lyapunov lyapunov() const { return base->lyapunov; }
  std::string pair_id() const { return to_string(upper) + "&" + to_string(lower); }
};

// Row order: SC+, PL+, EB+, *SC+, RSI+, QG+; column order: SC-, *SC-, PL-, RSI-, EB-, QG-.
const std::vector<ConditionKind>& table_rows();
const std::vector<ConditionKind>& table_columns();
const std::vector<TuningRule>& rate_table();

// The best-supported cell for the pair; starred variants win when the extra allows them.
// Throws no_guarantee if the pair needs an assumption that `extra` lacks.
const TuningRule& gd_rule(ConditionKind upper, ConditionKind lower, Extra extra = Extra::none);

struct HbTuning {
  double alpha;
  double beta;
};
HbTuning hb_quadratic_rule(double L, double mu);

struct Guarantee {
  const TuningRule* rule;
  double L;
  double mu;
  double alpha;
  double q;
};

// Minimum guaranteed q over all cells whose constants are present and positive.
Guarantee best_guarantee(const ConstantTable& constants, Extra extra);

std::string rate_table_csv();

}  // namespace condnum
