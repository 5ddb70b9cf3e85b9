#include "condnum/implication.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace condnum {
namespace {

constexpr ConditionKind SCp{Family::SC, Side::upper}, SCm{Family::SC, Side::lower};
constexpr ConditionKind SSCp{Family::StarSC, Side::upper}, SSCm{Family::StarSC, Side::lower};
constexpr ConditionKind RSIp{Family::RSI, Side::upper}, RSIm{Family::RSI, Side::lower};
constexpr ConditionKind EBp{Family::EB, Side::upper}, EBm{Family::EB, Side::lower};
constexpr ConditionKind PLp{Family::PL, Side::upper}, PLm{Family::PL, Side::lower};
constexpr ConditionKind QGp{Family::QG, Side::upper}, QGm{Family::QG, Side::lower};

ImplicationEdge edge(std::vector<ConditionKind> sources, ConditionKind target, std::string formula,
                     std::function<double(std::span<const double>)> convert,
                     std::vector<std::size_t> nonpositive_ok = {}) {
  std::string id;
  for (std::size_t i = 0; i < sources.size(); ++i) id += (i ? "&" : "") + to_string(sources[i]);
  id += "->" + to_string(target);
  return {id, std::move(sources), target, std::move(formula), std::move(nonpositive_ok),
          std::move(convert)};
}

auto same = [](std::span<const double> c) { return c[0]; };

std::vector<ImplicationEdge> make_edges() {
  std::vector<ImplicationEdge> e;
  // Lower conditions.
  e.push_back(edge({SCm}, SSCm, "mu", same, {0}));
  e.push_back(edge({SSCm}, PLm, "mu", same));
  e.push_back(edge({PLm}, QGm, "mu", same));
  e.push_back(edge({SSCm, QGm}, RSIm, "(mu1+mu2)/2",
                   [](std::span<const double> c) { return 0.5 * (c[0] + c[1]); }, {0}));
  e.push_back(edge({SSCm}, RSIm, "mu", same));
  e.push_back(edge({RSIm}, QGm, "mu", same));
  e.push_back(edge({RSIm}, EBm, "mu", same));
  e.push_back(edge({PLm, QGm}, EBm, "sqrt(mu1*mu2)",
                   [](std::span<const double> c) { return std::sqrt(c[0] * c[1]); }));
  e.push_back(edge({EBm, QGp}, PLm, "mu^2/L",
                   [](std::span<const double> c) { return c[0] * c[0] / c[1]; }));
  // Upper conditions.
  e.push_back(edge({SCp}, PLp, "L", same));
  e.push_back(edge({PLp}, SSCp, "L", same));
  e.push_back(edge({PLp}, QGp, "L", same));
  e.push_back(edge({PLp, QGp}, EBp, "sqrt(L1*L2)",
                   [](std::span<const double> c) { return std::sqrt(c[0] * c[1]); }));
  e.push_back(edge({EBp}, RSIp, "L", same));
  e.push_back(edge({SSCp}, QGp, "L", same));
  e.push_back(edge({SSCp, QGp}, RSIp, "(L1+L2)/2",
                   [](std::span<const double> c) { return 0.5 * (c[0] + c[1]); }));
  e.push_back(edge({RSIp}, SSCp, "2L", [](std::span<const double> c) { return 2.0 * c[0]; }));
  e.push_back(edge({RSIp}, QGp, "L", same));
  e.push_back(edge({SCm, QGp}, EBp, "L+sqrt(L*(L-mu))",
                   [](std::span<const double> c) {
                     double mu = c[0], L = c[1];
                     double disc = L * (L - mu);
                     if (disc < 0.0)
                       throw Error(ErrorCode::conversion_domain, "L*(L-mu) < 0");
                     return L + std::sqrt(disc);
                   },
                   {0}));
  e.push_back(edge({SCm, SSCp}, EBp, "L+2*max(-mu,0)",
                   [](std::span<const double> c) { return c[1] + 2.0 * std::max(-c[0], 0.0); },
                   {0}));
  e.push_back(edge({QGm, EBp}, PLp, "L^2/mu",
                   [](std::span<const double> c) { return c[1] * c[1] / c[0]; }));
  return e;
}

}  // namespace

const std::vector<ImplicationEdge>& builtin_edges() {
  static const std::vector<ImplicationEdge> edges = make_edges();
  return edges;
}

const std::vector<ExcludedEdge>& excluded_edges() {
  static const std::vector<ExcludedEdge> ex = {
      {"RSI-&QG+->*SC-", "2mu-L", "drawn in the implication diagram but no supporting proof"},
  };
  return ex;
}

const ImplicationEdge& find_edge(const std::string& id) {
  for (const auto& e : builtin_edges())
    if (e.id == id) return e;
  throw Error(ErrorCode::bad_label, "unknown edge '" + id + "'");
}

ConditionConstant apply_edge(const ImplicationEdge& edge, std::span<const ConditionConstant> constants) {
  if (constants.size() != edge.sources.size())
    throw Error(ErrorCode::kind_mismatch, edge.id + ": wrong number of source constants");
  std::vector<double> values;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    if (constants[i].kind != edge.sources[i])
      throw Error(ErrorCode::kind_mismatch, edge.id + ": expected " + to_string(edge.sources[i]) +
                                                ", got " + to_string(constants[i].kind));
    double v = constants[i].value;
    bool nonpos_ok = std::find(edge.nonpositive_ok.begin(), edge.nonpositive_ok.end(), i) !=
                     edge.nonpositive_ok.end();
    if (!std::isfinite(v) || (!(v > 0.0) && !nonpos_ok))
      throw Error(ErrorCode::conversion_domain,
                  edge.id + ": source " + to_string(constants[i].kind) + " = " + format_double(v));
    values.push_back(v);
  }
  ConditionConstant out{edge.target, edge.convert(values)};
  if (!is_valid(out))
    throw Error(ErrorCode::conversion_domain, edge.id + ": converted constant " +
                                                  format_double(out.value) + " is not admissible");
  return out;
}

std::string to_string(EdgeReport::Status s) {
  switch (s) {
    case EdgeReport::Status::holds: return "holds";
    case EdgeReport::Status::violated: return "violated";
    case EdgeReport::Status::not_applicable: return "not_applicable";
  }
  return "?";
}

EdgeReport verify_edge(const ImplicationEdge& edge, const SampledObjective& sample,
                       const ConstantTable& estimates, double tol) {
  EdgeReport r;
  r.edge_id = edge.id;
  r.objective_label = sample.objective().label();
  for (auto k : edge.sources) {
    auto it = estimates.find(k);
    if (it == estimates.end()) {
      r.note = "missing estimate for " + to_string(k);
      return r;
    }
    r.sources.push_back({k, it->second});
  }
  try {
    r.converted = apply_edge(edge, r.sources);
  } catch (const Error& e) {
    r.note = e.what();
    return r;
  }
  Verdict v = verify_membership(sample, *r.converted, tol);
  r.status = v.holds ? EdgeReport::Status::holds : EdgeReport::Status::violated;
  r.margin = v.margin;
  return r;
}

EdgeReport verify_edge(const ImplicationEdge& edge, const SampledObjective& sample, double tol) {
  ConstantTable est;
  for (auto k : edge.sources) est[k] = estimate_constant(k, sample).constant.value;
  return verify_edge(edge, sample, est, tol);
}

EdgeReport verify_edge(const ImplicationEdge& edge, const Objective& obj, const EstimationGrid& grid,
                       double tol) {
  return verify_edge(edge, SampledObjective(obj, grid), tol);
}

ConstantTable closure(const ConstantTable& initial, Extra extra) {
  ConstantTable t;
  for (const auto& [k, v] : initial) {
    if (!is_valid({k, v}))
      throw Error(ErrorCode::invalid_parameter, "closure: invalid constant " + to_string(k));
    t[k] = v;
  }
  auto raise = [&t](ConditionKind k, double v) {
    auto it = t.find(k);
    if (it == t.end() || v > it->second) t[k] = v;
  };
  if (satisfies(extra, Extra::convex)) raise(SCm, 0.0);
  if (satisfies(extra, Extra::star_convex)) raise(SSCm, 0.0);

  for (int round = 0; round < 100; ++round) {
    bool changed = false;
    for (const auto& e : builtin_edges()) {
      std::vector<ConditionConstant> src;
      for (auto k : e.sources) {
        auto it = t.find(k);
        if (it == t.end()) break;
        src.push_back({k, it->second});
      }
      if (src.size() != e.sources.size()) continue;
      ConditionConstant c;
      try {
        c = apply_edge(e, src);
      } catch (const Error&) {
        continue;
      }
      auto it = t.find(c.kind);
      bool improves = it == t.end() || (c.kind.is_lower() ? c.value > it->second : c.value < it->second);
      if (improves) {
        t[c.kind] = c.value;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return t;
}

std::vector<ConditionConstant> closure(std::span<const ConditionConstant> initial, Extra extra) {
  ConstantTable in;
  for (const auto& c : initial) {
    auto it = in.find(c.kind);
    if (it == in.end() || (c.kind.is_lower() ? c.value > it->second : c.value < it->second))
      in[c.kind] = c.value;
  }
  std::vector<ConditionConstant> out;
  for (const auto& [k, v] : closure(in, extra)) out.push_back({k, v});
  return out;
}

Extra implied_extra(const ConstantTable& table) {
  auto sc = table.find(SCm);
  if (sc != table.end() && sc->second >= 0.0) return Extra::convex;
  auto ssc = table.find(SSCm);
  if (ssc != table.end() && ssc->second >= 0.0) return Extra::star_convex;
  return Extra::none;
}

std::string edges_json() {
  nlohmann::ordered_json j;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : builtin_edges()) {
    nlohmann::ordered_json s = nlohmann::ordered_json::array();
    for (auto k : e.sources) s.push_back(to_string(k));
    nlohmann::ordered_json np = nlohmann::ordered_json::array();
    for (auto i : e.nonpositive_ok) np.push_back(to_string(e.sources[i]));
    j["edges"].push_back({{"id", e.id},
                          {"sources", s},
                          {"target", to_string(e.target)},
                          {"convert", e.formula},
                          {"nonpositive_sources", np}});
  }
  j["excluded"] = nlohmann::ordered_json::array();
  for (const auto& x : excluded_edges())
    j["excluded"].push_back({{"id", x.id}, {"convert", x.formula}, {"reason", x.reason}});
  return j.dump(2) + "\n";
}

}  // namespace condnum
