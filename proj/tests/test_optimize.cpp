#include "support.hpp"

#include "condnum/corpus.hpp"
#include "condnum/labels.hpp"
#include "condnum/optimize.hpp"
#include "condnum/tuning.hpp"

#include <cmath>
#include <vector>

using namespace condnum;
using condnum::test::for_all;
using condnum::test::Gen;

namespace {

Vec two(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(Gd, StepsToMinimizer) {
  auto t = gd(make_quadratic(vec1(2.0)), vec1(1.0), 0.5, 5);
  EXPECT_EQ(t.iterates[1][0], 0.0);
  EXPECT_EQ(*first_hit(t, 0.5), 1u);
}

TEST(Gd, FEpsHalfStepTwoSteps) {
  auto t = gd(make_f_eps(0.5), vec1(3.0), 0.5, 5);
  EXPECT_LT(std::abs(t.iterates[2][0]), 1e-12);
  auto hit = first_hit(t, 1e-9);
  ASSERT_TRUE(hit);
  EXPECT_LE(*hit, 2u);
}

TEST(Gd, FEpsConservativeStepLowerBound) {
  const double eps = 0.1, alpha = eps / (2 * eps + 1);
  const double bound = (1 - eps * eps) / ((2 * eps + 1) * (1 + eps * eps));
  EXPECT_NEAR(bound, 0.8168, 1e-4);
  auto t = gd(make_f_eps(eps), vec1(3.0), alpha, 50);
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    EXPECT_GE(std::abs(t.iterates[k + 1][0]), bound * std::abs(t.iterates[k][0]) - 1e-12);
}

TEST(Gd, RejectsBadParameters) {
  auto f = make_f_lrp();
  EXPECT_THROW(gd(f, vec1(1.0), 0.0, 10), Error);
  EXPECT_THROW(gd(f, vec1(1.0), 0.1, 0), Error);
  EXPECT_THROW(heavy_ball(f, vec1(1.0), 0.1, 1.0, 10), Error);
}

TEST(Gd, DivergenceTruncates) {
  auto t = gd(make_quadratic(vec1(2.0)), vec1(1.0), 5.0, 5000);
  EXPECT_TRUE(t.diverged);
  EXPECT_LT(t.size(), 5001u);
  EXPECT_EQ(estimate_rate(t).cls, RateClass::diverged);
}

TEST(HeavyBall, BetaZeroIsGd) {
  for (const auto& label : {"f_lrp", "f_eps:0.2", "quadratic:1,10"}) {
    auto f = parse_objective(label);
    Vec x0 = Vec::Constant(f.dimension(), 3.3);
    auto a = gd(f, x0, 0.03, 200);
    auto b = heavy_ball(f, x0, 0.03, 0.0, 200);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_TRUE(a.iterates[k] == b.iterates[k]) << label << " " << k;
  }
}

TEST(HeavyBall, FLrpTunings) {
  auto f = make_f_lrp();
  HbTuning bad = hb_quadratic_rule(25, 1);
  auto t = heavy_ball(f, vec1(3.3), bad.alpha, bad.beta, 2000);
  auto r = estimate_rate(t);
  EXPECT_TRUE(r.cls == RateClass::stalled || r.cls == RateClass::diverged);
  EXPECT_FALSE(first_hit(t, 0.1));

  HbTuning good = hb_quadratic_rule(25, 19);
  EXPECT_EQ(estimate_rate(heavy_ball(f, vec1(3.3), good.alpha, good.beta, 2000)).cls, RateClass::converged_linear);
}

TEST(Adaptive, ConstantScaleIsGd) {
  auto f = make_f_lrp();
  auto a = gd(f, vec1(3.3), 0.03, 100);
  auto b = adaptive_gd(f, vec1(3.3), 0.03, [](double) { return 1.0; }, 100);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_TRUE(a.iterates[k] == b.iterates[k]);
}

TEST(Adaptive, SquaredObjectiveOracle) {
  for (const auto& label : {"quadratic:1,10", "f_eps:0.3"}) {
    auto f = parse_objective(label);
    auto sq = compose(f, [](double t) { return t * t; }, [](double t) { return 2 * t; }, "sq");
    Vec x0 = Vec::Constant(f.dimension(), 0.9);
    auto a = adaptive_gd(f, x0, 0.01, [](double t) { return 2 * t; }, 300);
    auto b = gd(sq, x0, 0.01, 300);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE((a.iterates[k] - b.iterates[k]).norm(), 1e-12);
  }
}

TEST(Property, ReplayDeterminism) {
  std::vector<std::string> labels = {"f_lrp", "f_eps:0.1", "plateau:0.5,1", "quadratic:1,10", "smooth_abs"};
  for_all(20, [&](Gen& g) {
    auto f = parse_objective(labels[g.integer(0, static_cast<int>(labels.size()) - 1)]);
    Vec x0 = g.vec(f.dimension(), -4, 4);
    double alpha = g.uniform(0.001, 0.1), beta = g.uniform(0, 0.9);
    auto a = heavy_ball(f, x0, alpha, beta, 100);
    EXPECT_TRUE(replay_matches(a, heavy_ball_step(alpha, beta)));
    auto b = heavy_ball(f, x0, alpha, beta, 100);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_TRUE(a.iterates[k] == b.iterates[k]);
    auto c = gd(f, x0, alpha, 100);
    EXPECT_TRUE(replay_matches(c, gd_step(alpha)));
    EXPECT_FALSE(replay_matches(c, gd_step(alpha * 1.5)));
  });
}

TEST(Rate, GeometricSeries) {
  std::vector<double> s;
  for (int k = 0; k < 200; ++k) s.push_back(std::pow(0.9, k));
  auto r = estimate_rate(s, false);
  EXPECT_EQ(r.cls, RateClass::converged_linear);
  EXPECT_NEAR(r.linear_rate, 0.9, 1e-12);
  EXPECT_NEAR(r.fit_rate, 0.9, 1e-12);
}

TEST(Rate, SublinearSeries) {
  std::vector<double> s;
  for (int k = 1; k <= 2000; ++k) s.push_back(1.0 / k);
  EXPECT_EQ(estimate_rate(s, false).cls, RateClass::converged_sublinear);
}

TEST(Rate, AllBelowTolerance) {
  std::vector<double> s(50, 0.0);
  s[0] = 1;
  auto r = estimate_rate(s, false);
  EXPECT_EQ(r.cls, RateClass::converged_linear);
  EXPECT_EQ(r.linear_rate, 0.0);
}

TEST(Rate, QuadraticOptimalStep) {
  auto f = parse_objective("quadratic:1,10");
  auto t = gd(f, two(3.3, 3.3), 2.0 / 11, 100);
  auto r = estimate_rate(t, RateOptions{}, Lyapunov::distance_sq);
  EXPECT_NEAR(r.linear_rate, std::pow(9.0 / 11, 2), 1e-6);
  auto sub = lyapunov_series(t, Lyapunov::value_gap);
  for (std::size_t k = 0; k + 1 < sub.size(); ++k)
    if (sub[k] > 1e-20) { EXPECT_LE(sub[k + 1] / sub[k], std::pow(9.0 / 11, 2) + 1e-9); }
}

TEST(Rate, PlateauStalls) {
  auto f = make_plateau(0.5, 1.0);
  for (double alpha : {0.1, 0.5, 1.0}) {
    auto t = gd(f, vec1(3.0), alpha, 500);
    bool landed = false;
    for (const auto& x : t.iterates) landed |= (x[0] >= 1.5 && x[0] <= 2.5);
    if (!landed) continue;
    auto r = estimate_rate(t);
    EXPECT_EQ(r.cls, RateClass::stalled) << alpha;
    EXPECT_NEAR(t.subopt.back(), 0.75, 1e-12);
  }
}

TEST(FirstHit, NonConvergentRunHasNone) {
  HbTuning h = hb_quadratic_rule(25, 1);
  auto t = heavy_ball(make_f_lrp(), vec1(3.3), h.alpha, h.beta, 2000);
  EXPECT_FALSE(first_hit(t, 0.1).has_value());
  EXPECT_THROW(first_hit(t, 0.0), Error);
}

TEST(Sublinear, ConvexGdBound) {
  // alpha = 1/L on convex members: subopt[n] <= L d0^2 / (2n)
  std::vector<std::pair<std::string, double>> cases = {{"quadratic:1,10", 10.0}, {"box:-1,1", 1.0},
                                                       {"segment:-1,1,0,2", 1.0}, {"smooth_abs", 1.0}};
  for (const auto& [label, L] : cases) {
    auto f = parse_objective(label);
    Vec x0 = Vec::Constant(f.dimension(), 3.3);
    auto t = gd(f, x0, 1.0 / L, 1000);
    const double d0 = t.dist[0];
    for (std::size_t n = 1; n < t.size(); ++n)
      EXPECT_LE(t.subopt[n], L * d0 * d0 / (2.0 * n) + 1e-12) << label << " n=" << n;
  }
}

TEST(Sublinear, PlStarConvexBestIterateBound) {
  std::vector<std::pair<std::string, double>> cases = {{"box:-1,1", 1.0}, {"smooth_abs", 1.0}, {"f_lrp", 25.0}};
  for (const auto& [label, L] : cases) {
    auto f = parse_objective(label);
    Vec x0 = Vec::Constant(f.dimension(), 3.3);
    auto t = gd(f, x0, 1.0 / (2 * L), 1000);
    auto best = lyapunov_series(t, Lyapunov::min_value_gap);
    const double d0 = t.dist[0];
    for (std::size_t n = 1; n < t.size(); ++n)
      EXPECT_LE(best[n], 2 * L * d0 * d0 / (n + 1.0) + 1e-12) << label << " n=" << n;
  }
}

TEST(Output, TrajectoryCsvDeterministic) {
  auto f = make_f_lrp();
  auto a = trajectory_csv(gd(f, vec1(3.3), 0.02, 30));
  auto b = trajectory_csv(gd(f, vec1(3.3), 0.02, 30));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "iter,x0,f,grad_norm,subopt,dist");
}

TEST(Output, RateJson) {
  RateEstimate r{std::numeric_limits<double>::infinity(), 0.5, RateClass::stalled, 3};
  EXPECT_NE(to_json(r).find("\"inf\""), std::string::npos);
}
