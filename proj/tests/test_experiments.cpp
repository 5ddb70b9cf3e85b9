#include "support.hpp"

#include "condnum/experiments.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace condnum;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  Config c = Config::defaults("hb-sweep");
  EXPECT_EQ(c.integer("iters"), 2000);
  auto mus = c.numbers("mus");
  ASSERT_EQ(mus.size(), 5u);
  EXPECT_DOUBLE_EQ(mus[2], 169.0 / 19);
  const std::string h = c.hash();
  c.set("iters", "100");
  EXPECT_NE(c.hash(), h);
  EXPECT_THROW(c.set("bogus", "1"), Error);
  EXPECT_THROW(Config::defaults("nope"), Error);
  EXPECT_THROW(parse_number("1/0"), Error);
  EXPECT_THROW(parse_number("3x"), Error);
}

TEST(Config, FileMerge) {
  const std::string path = ::testing::TempDir() + "condnum_cfg.txt";
  {
    std::ofstream os(path);
    os << "# comment\n  iters = 42  # trailing\n\nobjective = f_eps:0.2; f_lrp\n";
  }
  Config c = Config::defaults("constants");
  EXPECT_THROW(c.merge_file(path), Error);  // constants has no iters key
  Config r = Config::defaults("rates");
  r.merge_file(path);
  EXPECT_EQ(r.integer("iters"), 42);
  auto labels = r.labels("objective");
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[1], "f_lrp");
  std::remove(path.c_str());
}

TEST(Csv, MetadataBlockAndQuoting) {
  Config c = Config::defaults("constants");
  Csv csv;
  csv.header = {"a", "b"};
  csv.rows = {{"quadratic:1,10", "x\"y"}};
  auto ls = lines(csv.render(c, "g"));
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[1], "\"quadratic:1,10\",\"x\"\"y\"");
  EXPECT_EQ(ls[2], "# config_hash=" + c.hash());
  EXPECT_EQ(ls[3], "# grid=g");
  EXPECT_EQ(ls[4], std::string("# tool_version=") + kToolVersion);
}

TEST(Commands, ConstantsDeterministic) {
  Config c = Config::defaults("constants");
  c.set("objective", "f_lrp;quadratic:1,10");
  auto a = run_command(c), b = run_command(c);
  EXPECT_EQ(a.body, b.body);
  EXPECT_EQ(a.csv.rows.size(), 24u);
  EXPECT_EQ(a.csv.header, (std::vector<std::string>{"label", "kind", "value", "achieving_point"}));
}

TEST(Commands, VerifyGraphDefaultCorpus) {
  auto r = run_command(Config::defaults("verify-graph"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.csv.rows.size(), 4u * 21u);
  for (const auto& row : r.csv.rows) EXPECT_NE(row[4], "violated") << row[0] << " " << row[1];
}

TEST(Commands, RatesCompliance) {
  auto r = run_rates(Config::defaults("rates"));
  EXPECT_GT(r.size(), 60u);
  for (const auto& row : r) EXPECT_TRUE(row.compliant) << row.label << " " << row.rule;
}

TEST(Commands, RatesFixedStep) {
  Config c = Config::defaults("rates");
  c.set("objective", "f_eps:0.1");
  c.set("alpha", "1/2");
  c.set("q", "0.1");
  auto r = run_rates(c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_LE(r[0].measured, 0.1);
}

TEST(Commands, PerturbStudyLadder) {
  Config c = Config::defaults("perturb-study");
  c.set("ladder", "0.4,0.2,0.1,0.05,0");
  auto rows = run_perturb_study(c);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    EXPECT_LE(rows[i + 1].max_deviation, rows[i].max_deviation + 1e-12);
  // GD at alpha = 0.4 from x0 = 1 sees the full omega slope on its first step.
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(rows[i].max_deviation, 0.4 * rows[i].eps, 1e-9);
  EXPECT_EQ(rows.back().max_deviation, 0.0);
  EXPECT_EQ(rows.back().star_norm, 0.0);
  EXPECT_EQ(rows.back().max_first_hit_shift, 0);
}

TEST(Commands, HbSweepSmallGrid) {
  Config c = Config::defaults("hb-sweep");
  c.set("alpha_points", "12");
  c.set("beta_points", "10");
  c.set("iters", "600");
  SweepResult r = run_hb_sweep(c);
  ASSERT_EQ(r.cells.size(), 10u);
  ASSERT_EQ(r.cells[0].size(), 12u);
  for (const auto& t : r.tunings) {
    EXPECT_LT(t.alpha_index, 12u);
    EXPECT_LT(t.beta_index, 10u);
    EXPECT_LE(std::abs(r.alpha_grid[t.alpha_index] - t.alpha), 0.12 / 12 / 2 + 1e-12);
    EXPECT_LE(std::abs(r.beta_grid[t.beta_index] - t.beta), 0.1 / 2 + 1e-12);
  }
  // beta = 0 row is GD: stable below 2/25.
  for (std::size_t i = 0; i < r.alpha_grid.size(); ++i)
    EXPECT_EQ(std::isfinite(r.rate(0, i)), r.alpha_grid[i] < 2.0 / 25) << r.alpha_grid[i];
  auto res = cmd_hb_sweep(c);
  EXPECT_NE(res.sidecar.find("\"cell_class\""), std::string::npos);
  EXPECT_EQ(res.body, cmd_hb_sweep(c).body);
}

TEST(Commands, DiscontinuityColumns) {
  auto rows = run_discontinuity(Config::defaults("discontinuity"));
  std::vector<DiscontinuityRow> f;
  for (const auto& r : rows)
    if (r.family == "f_eps") f.push_back(r);
  ASSERT_EQ(f.size(), 4u);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    EXPECT_GT(f[i].star_norm, f[i + 1].star_norm);
    EXPECT_LT(f[i].L_sc, f[i + 1].L_sc);
    EXPECT_LT(f[i].naive_rate, f[i + 1].naive_rate);
  }
  for (const auto& r : f) EXPECT_LE(r.fixed_rate, r.eps);
}

TEST(Commands, UnknownCommand) { EXPECT_THROW(Config::defaults("frobnicate"), Error); }
