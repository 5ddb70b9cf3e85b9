#include "support.hpp"

#include "condnum/corpus.hpp"
#include "condnum/implication.hpp"
#include "condnum/labels.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <vector>

using namespace condnum;
using condnum::test::for_all;
using condnum::test::Gen;

namespace {

ConditionKind K(const char* s) { return parse_kind(s); }

ConditionConstant C(const char* k, double v) { return {K(k), v}; }

double convert(const char* id, std::vector<ConditionConstant> in) {
  return apply_edge(find_edge(id), in).value;
}

ConstantTable estimated(const SampledObjective& s) {
  ConstantTable t;
  for (const auto& e : estimate_all(s)) t[e.constant.kind] = e.constant.value;
  return t;
}

}  // namespace

TEST(Edges, CountAndUniqueness) {
  const auto& edges = builtin_edges();
  EXPECT_EQ(edges.size(), 21u);
  std::set<std::string> ids;
  for (const auto& e : edges) ids.insert(e.id);
  EXPECT_EQ(ids.size(), edges.size());
  for (const auto& x : excluded_edges()) EXPECT_EQ(ids.count(x.id), 0u);
}

TEST(Edges, Conversions) {
  EXPECT_EQ(convert("PL-->QG-", {C("PL-", 3)}), 3.0);
  EXPECT_EQ(convert("SC-&QG+->EB+", {C("SC-", 0), C("QG+", 4)}), 8.0);
  EXPECT_DOUBLE_EQ(convert("EB-&QG+->PL-", {C("EB-", 13), C("QG+", 25)}), 6.76);
  EXPECT_EQ(convert("RSI+->*SC+", {C("RSI+", 25)}), 50.0);
  EXPECT_EQ(convert("*SC-&QG-->RSI-", {C("*SC-", 7), C("QG-", 19)}), 13.0);
  EXPECT_EQ(convert("PL-&QG-->EB-", {C("PL-", 4), C("QG-", 9)}), 6.0);
  EXPECT_EQ(convert("QG-&EB+->PL+", {C("QG-", 2), C("EB+", 6)}), 18.0);
  EXPECT_EQ(convert("SC-&*SC+->EB+", {C("SC-", -1.5), C("*SC+", 4)}), 7.0);
  EXPECT_EQ(convert("*SC-&QG-->RSI-", {C("*SC-", -2), C("QG-", 6)}), 2.0);
}

TEST(Edges, Errors) {
  try {
    apply_edge(find_edge("PL-->QG-"), std::vector<ConditionConstant>{C("QG-", 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kind_mismatch);
  }
  try {
    apply_edge(find_edge("SC-&QG+->EB+"), std::vector<ConditionConstant>{C("SC-", 5), C("QG+", 4)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::conversion_domain);
  }
  try {
    apply_edge(find_edge("PL-->QG-"), std::vector<ConditionConstant>{C("PL-", -1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::conversion_domain);
  }
}

TEST(Verify, QuadraticAllEdgesHold) {
  auto f = parse_objective("quadratic:1,10");
  SampledObjective s(f, EstimationGrid::defaults_for(f));
  for (const auto& e : builtin_edges()) {
    auto r = verify_edge(e, s, 1e-6);
    EXPECT_EQ(r.status, EdgeReport::Status::holds) << e.id << " " << r.note;
  }
}

TEST(Verify, FLrpRsiEdgeIsTight) {
  auto f = make_f_lrp();
  SampledObjective s(f, EstimationGrid::defaults_for(f));
  ConstantTable est = estimated(s);
  auto r = verify_edge(find_edge("*SC-&QG-->RSI-"), s, est, 1e-6);
  ASSERT_EQ(r.status, EdgeReport::Status::holds);
  EXPECT_NEAR(r.converted->value, (7 + 17) / 2.0, 1e-6);
  EXPECT_TRUE(verify_membership(s, C("RSI-", 13.0), 1e-6).holds);
  EXPECT_FALSE(verify_membership(s, C("RSI-", 13.01), 1e-6).holds);
}

TEST(Verify, FEpsPlEdgeIsConservative) {
  auto f = make_f_eps(0.1);
  SampledObjective s(f, EstimationGrid::defaults_for(f));
  ConstantTable est = estimated(s);
  auto r = verify_edge(find_edge("EB-&QG+->PL-"), s, est, 1e-6);
  ASSERT_EQ(r.status, EdgeReport::Status::holds);
  EXPECT_LE(r.converted->value, est.at(K("PL-")) + 1e-9);
}

TEST(Property, SoundnessSweep) {
  std::vector<std::string> corpus = {"quadratic:1,10", "f_lrp",        "f_eps:0.1",     "f_eps:0.4",
                                     "quadratic:2+smooth_abs", "f_lrp+smooth_abs", "plateau:0.5,1", "box:-1,1",
                                     "smooth_abs"};
  for (const auto& label : corpus) {
    auto f = parse_objective(label);
    SampledObjective s(f, EstimationGrid::defaults_for(f));
    ConstantTable est = estimated(s);
    for (const auto& e : builtin_edges()) {
      auto r = verify_edge(e, s, est, 1e-6);
      EXPECT_NE(r.status, EdgeReport::Status::violated) << label << " " << e.id << " margin " << r.margin;
    }
  }
}

TEST(Closure, SmoothStronglyConvexPopulatesAll) {
  ConstantTable t = closure(ConstantTable{{K("SC-"), 2.0}, {K("SC+"), 5.0}});
  for (auto k : all_kinds()) EXPECT_TRUE(t.count(k)) << to_string(k);
}

TEST(Closure, PlAlone) {
  ConstantTable t = closure(ConstantTable{{K("PL-"), 3.0}});
  ConstantTable expect = {{K("PL-"), 3.0}, {K("QG-"), 3.0}, {K("EB-"), 3.0}};
  EXPECT_EQ(t, expect);
}

TEST(Closure, RsiUpperAlone) {
  ConstantTable t = closure(ConstantTable{{K("RSI+"), 4.0}});
  ConstantTable expect = {{K("RSI+"), 4.0}, {K("*SC+"), 8.0}, {K("QG+"), 4.0}};
  EXPECT_EQ(t, expect);
  ConstantTable convex = closure(ConstantTable{{K("RSI+"), 4.0}}, Extra::convex);
  EXPECT_TRUE(convex.count(K("EB+")));
}

TEST(Property, ClosureIdempotentAndDominated) {
  std::vector<std::string> corpus = {"quadratic:1,10", "f_lrp", "f_eps:0.1", "quadratic:2+smooth_abs"};
  for (const auto& label : corpus) {
    auto f = parse_objective(label);
    SampledObjective s(f, EstimationGrid::defaults_for(f));
    ConstantTable est = estimated(s);
    Gen g(std::hash<std::string>{}(label));
    for (int trial = 0; trial < 8; ++trial) {
      ConstantTable seed;
      for (auto k : all_kinds())
        if (g.coin() && std::isfinite(est.at(k)) && is_valid({k, est.at(k)})) seed[k] = est.at(k);
      ConstantTable once = closure(seed);
      EXPECT_EQ(closure(once), once) << label;
      for (const auto& [k, v] : once) {
        if (k.is_lower())
          EXPECT_LE(v, est.at(k) + 1e-6) << label << " " << to_string(k);
        else
          EXPECT_GE(v, est.at(k) - 1e-6) << label << " " << to_string(k);
      }
    }
  }
}

TEST(Property, ConvertMonotone) {
  // Weaker sources never give a stronger target.
  for (const auto& e : builtin_edges()) {
    for_all(50, [&](Gen& g) {
      std::vector<ConditionConstant> a, b;
      for (auto k : e.sources) {
        double v = k.is_lower() ? g.uniform(0.5, 5) : g.uniform(6, 20);
        double w = k.is_lower() ? v - g.uniform(0, 0.4) : v + g.uniform(0, 5);
        a.push_back({k, v});
        b.push_back({k, w});
      }
      double ta, tb;
      try {
        ta = apply_edge(e, a).value;
        tb = apply_edge(e, b).value;
      } catch (const Error&) {
        return;
      }
      if (e.target.is_lower())
        EXPECT_LE(tb, ta + 1e-12) << e.id;
      else
        EXPECT_GE(tb, ta - 1e-12) << e.id;
    });
  }
}

TEST(Json, EdgesDump) {
  auto j = nlohmann::json::parse(edges_json());
  ASSERT_TRUE(j.contains("edges"));
  EXPECT_EQ(j["edges"].size(), 21u);
}
