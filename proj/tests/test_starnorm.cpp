#include "support.hpp"

#include "condnum/conditions.hpp"
#include "condnum/corpus.hpp"
#include "condnum/labels.hpp"
#include "condnum/starnorm.hpp"

#include <cmath>
#include <vector>

using namespace condnum;
using condnum::test::for_all;
using condnum::test::Gen;

namespace {

const MinimizerSet kOrigin = MinimizerSet::point(vec1(0.0));

Perturbation omega(double eps) { return make_omega_eps(eps, vec1(1.0), vec1(0.0)); }

// sup |h'(x)|/|x| for h = f_eps - x^2: h' = 2(x-1)/eps on [1, 1+eps^2], 2 eps beyond,
// so the ratio peaks at x = 1 + eps^2.
double h_eps_norm(double eps) { return 2 * eps / (1 + eps * eps); }

}  // namespace

TEST(StarNorm, WorkedExamples) {
  EXPECT_NEAR(star_norm(as_perturbation(make_smooth_abs())).value, 1.0, 1e-6);
  EXPECT_NEAR(star_norm(as_perturbation(make_cubic_ramp())).value, 1.5, 1e-6);
}

TEST(StarNorm, OmegaBound) {
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    StarNorm n = star_norm(omega(eps));
    EXPECT_GT(n.value, 0.0);
    EXPECT_LE(n.value, eps / (1 - eps * eps) + 1e-9);
    EXPECT_NEAR(n.value, eps, 1e-9);
    EXPECT_NEAR(n.argmax[0], 1.0, 1e-6);
    EXPECT_FALSE(n.unbounded);
  }
}

TEST(Omega, ProfileBranches) {
  for (double eps : {0.5, 0.1}) {
    auto h = omega(eps);
    for_all(50, [&](Gen& g) {
      double t = g.uniform(-3, 4);
      EXPECT_LE(std::abs(h.gradient(vec1(t))[0]), eps + 1e-15);
    });
    EXPECT_NEAR(h.gradient(vec1(1.0))[0], -eps, 1e-15);
    const double beyond = h.value(vec1(1 + eps * eps));
    EXPECT_EQ(h.value(vec1(1 + eps * eps + 0.5)), beyond);
    EXPECT_EQ(h.value(vec1(7.0)), beyond);
    EXPECT_EQ(h.value(vec1(0.0)), 0.0);
  }
  EXPECT_THROW(omega(1.0), Error);
  EXPECT_THROW(omega(0.0), Error);
}

TEST(StarNorm, FEpsDifferenceOracle) {
  auto f0 = make_quadratic(vec1(2.0));
  double prev = 1e300;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    StarNorm n = star_norm(diff_as_perturbation(f0, make_f_eps(eps)));
    EXPECT_NEAR(n.value, h_eps_norm(eps), 1e-9) << eps;
    EXPECT_LT(n.value, prev);
    prev = n.value;
  }
  EXPECT_NEAR(h_eps_norm(0.4), 0.689655172413793, 1e-12);
  EXPECT_NEAR(h_eps_norm(0.05), 0.0997506234413965, 1e-12);
}

TEST(StarNorm, ZeroPerturbation) {
  auto f = make_f_lrp();
  auto h = diff_as_perturbation(f, f);
  StarNorm n = star_norm(h);
  EXPECT_EQ(n.value, 0.0);
  for (double x : {-2.0, 0.5, 3.3}) EXPECT_EQ(h.gradient(vec1(x))[0], 0.0);
}

TEST(StarNorm, SubtractionRecoversOmega) {
  auto q = make_quadratic(vec1(2.0));
  auto h = omega(0.2);
  auto p = perturb(q, h);
  EXPECT_NEAR(star_norm(diff_as_perturbation(q, p)).value, star_norm(h).value, 1e-12);
}

TEST(Perturb, RoundTripFEps) {
  auto f0 = make_quadratic(vec1(2.0));
  auto fe = make_f_eps(0.3);
  auto back = perturb(f0, diff_as_perturbation(f0, fe));
  for_all(100, [&](Gen& g) {
    double x = g.uniform(-5, 5);
    EXPECT_NEAR(back.value(vec1(x)), fe.value(vec1(x)), 1e-12 * (1 + x * x));
  });
}

TEST(Perturb, LargeOmegaChangesMinimizers) {
  auto q = make_quadratic(vec1(2.0));
  EXPECT_NO_THROW(perturb(q, omega(0.5)));
  EXPECT_NO_THROW(perturb(q, omega(0.5).scaled(5)));
  try {
    perturb(q, omega(0.5).scaled(20));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::perturbation_changes_minimizers);
  }
}

TEST(Perturbation, RejectsNonVanishing) {
  try {
    Perturbation p("one", 1, [](const Vec&) { return 1.0; }, [](const Vec&) { return vec1(0.0); }, kOrigin, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_perturbation);
  }
}

TEST(Perturbation, RejectsGrowingRatio) {
  // x^4: |h'(x)|/|x| = 4x^2 keeps growing past any box.
  auto v = [](const Vec& x) { return std::pow(x[0], 4); };
  auto g = [](const Vec& x) { return vec1(4 * std::pow(x[0], 3)); };
  try {
    Perturbation p("quartic", 1, v, g, kOrigin, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_perturbation);
  }
  Perturbation lazy("quartic", 1, v, g, kOrigin, {}, Perturbation::Validation::skip);
  EXPECT_TRUE(star_norm(lazy).unbounded);
}

TEST(Perturbation, DiffNeedsSameMinimizers) {
  try {
    diff_as_perturbation(make_quadratic(vec1(2.0)), make_quadratic(vec1(2.0), vec1(1.0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::incompatible_perturbation);
  }
}

TEST(Property, NormHomogeneity) {
  auto h = omega(0.3);
  const double base = star_norm(h).value;
  for_all(20, [&](Gen& g) {
    double c = g.uniform(-4, 4);
    if (std::abs(c) < 1e-3) return;
    EXPECT_NEAR(star_norm(h.scaled(c)).value, std::abs(c) * base, 1e-9 * (1 + std::abs(c)));
  });
}

TEST(Property, NormTriangle) {
  std::vector<Perturbation> hs = {omega(0.3), omega(0.1), as_perturbation(make_smooth_abs()),
                                  as_perturbation(make_cubic_ramp()),
                                  diff_as_perturbation(make_quadratic(vec1(2.0)), make_f_eps(0.2))};
  for_all(20, [&](Gen& g) {
    const auto& a = hs[g.integer(0, static_cast<int>(hs.size()) - 1)];
    const auto& b = hs[g.integer(0, static_cast<int>(hs.size()) - 1)];
    double ca = g.uniform(-2, 2), cb = g.uniform(-2, 2);
    auto sa = a.scaled(ca), sb = b.scaled(cb);
    EXPECT_LE(star_norm(sa.plus(sb)).value, star_norm(sa).value + star_norm(sb).value + 1e-9);
  });
}

TEST(Property, ValueBound) {
  std::vector<Perturbation> hs = {omega(0.3), as_perturbation(make_smooth_abs()), as_perturbation(make_cubic_ramp()),
                                  diff_as_perturbation(make_quadratic(vec1(2.0)), make_f_eps(0.2))};
  for (const auto& h : hs) {
    const double n = star_norm(h).value;
    for_all(200, [&](Gen& g) {
      double x = g.uniform(-5, 5);
      EXPECT_LE(std::abs(h.value(vec1(x))), n * x * x / 2 + 1e-12) << h.label() << " x=" << x;
    });
  }
}

TEST(Discontinuity, OmegaFamilyDegradesSmoothConstants) {
  auto q = make_quadratic(vec1(2.0));
  double prev_L = 0, prev_mu = 1e300, prev_norm = 1e300;
  for (double eps : {0.2, 0.1, 0.05}) {
    auto f = perturb(q, omega(eps));
    SampledObjective s(f, EstimationGrid::defaults_for(f));
    double L = estimate_constant(parse_kind("SC+"), s).constant.value;
    double mu = estimate_constant(parse_kind("SC-"), s).constant.value;
    double n = star_norm(omega(eps)).value;
    EXPECT_GT(L, prev_L);
    EXPECT_LT(mu, prev_mu);
    EXPECT_LT(n, prev_norm);
    prev_L = L, prev_mu = mu, prev_norm = n;
  }
}

TEST(Labels, PerturbationGrammar) {
  EXPECT_EQ(parse_perturbation("omega_eps:0.5", kOrigin).label(), "omega_eps:0.5");
  EXPECT_NEAR(star_norm(parse_perturbation("3*smooth_abs", kOrigin)).value, 3.0, 1e-6);
  EXPECT_DOUBLE_EQ(parse_objective("quadratic:2+3*smooth_abs").value(vec1(1.0)),
                   parse_objective("quadratic:2").value(vec1(1.0)) + 3 * make_smooth_abs().value(vec1(1.0)));
  EXPECT_NEAR(star_norm(parse_perturbation("diff:f_eps:0.1-quadratic:2", kOrigin)).value, h_eps_norm(0.1), 1e-9);
}
