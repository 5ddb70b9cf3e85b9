#include "condnum/experiments.hpp"

#include "condnum/corpus.hpp"
#include "condnum/labels.hpp"
#include "condnum/logistic.hpp"
#include "condnum/parallel.hpp"
#include "condnum/starnorm.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace condnum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

using Defaults = std::map<std::string, std::string>;

const std::map<std::string, Defaults>& all_defaults() {
  static const std::map<std::string, Defaults> d = {
      {"constants", {{"objective", "f_lrp"}, {"grid", "auto"}, {"seed", "12345"}}},
      {"verify-graph",
       {{"objective", "quadratic:1,10;f_lrp;f_eps:0.1;quadratic:2+smooth_abs"},
        {"grid", "auto"},
        {"seed", "12345"},
        {"tol", "1e-6"}}},
      {"rates",
       {{"objective", "quadratic:1,10;f_lrp"},
        {"grid", "auto"},
        {"seed", "12345"},
        {"iters", "500"},
        {"x0", "3.3"},
        {"alpha", "none"},
        {"q", "none"},
        {"pairs", "all"},
        {"slack", "1e-9"}}},
      {"hb-sweep",
       {{"objective", "f_lrp"},
        {"seed", "12345"},
        {"iters", "2000"},
        {"x0", "3.3"},
        {"alpha_max", "0.12"},
        {"alpha_points", "200"},
        {"beta_points", "200"},
        {"L", "25"},
        {"mus", "1,7,169/19,13,19"}}},
      {"perturb-study",
       {{"objective", "quadratic:2"},
        {"seed", "12345"},
        {"perturbation", "omega_eps"},
        {"ladder", "0.4,0.2,0.1,0.05,0.01,0.002"},
        {"alpha", "0.4"},
        {"x0s", "-2,-1,1,2"},
        {"iters", "20"},
        {"radius", "0.1"}}},
      {"discontinuity",
       {{"objective", "quadratic:2"},
        {"grid", "auto"},
        {"seed", "12345"},
        {"ladder", "0.4,0.2,0.1,0.05"},
        {"x0", "3"},
        {"fixed_alpha", "0.5"},
        {"iters", "200"}}},
      {"logistic",
       {{"seed", "42"},
        {"d", "3"},
        {"m", "200"},
        {"iters", "3000"},
        {"oracle_iters", "300"},
        {"half_width", "3"},
        {"points", "41"}}},
      {"edges", {}},
      {"table", {}},
  };
  return d;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) { return format_double(v); }

std::string point_string(const Vec& x) {
  if (x.size() == 1) return fmt(x[0]);
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ";" : "") + fmt(x[i]);
  return s + ")";
}

Vec filled(int dim, double v) { return Vec::Constant(dim, v); }

CommandResult finish(const Config& cfg, Csv csv, std::string grid, int exit_code) {
  CommandResult r;
  r.body = csv.render(cfg, grid);
  r.csv = std::move(csv);
  r.grid = std::move(grid);
  r.exit_code = exit_code;
  return r;
}

std::string join_grids(const std::vector<std::string>& grids) {
  std::string s;
  for (std::size_t i = 0; i < grids.size(); ++i) s += (i ? ";" : "") + grids[i];
  return s;
}

// Largest one-step ratio of a Lyapunov series, ignoring steps that start below the noise floor.
double max_step_ratio(const std::vector<double>& s) {
  if (s.empty()) return 0.0;
  const double floor = 1e-12 * std::max(1.0, s.front());
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (!(s[k] > floor)) continue;
    if (!std::isfinite(s[k + 1])) return kInf;
    worst = std::max(worst, s[k + 1] / s[k]);
  }
  return worst;
}

double linear_or_inf(const RateEstimate& r) {
  return r.cls == RateClass::converged_linear ? r.fit_rate : kInf;
}

}  // namespace

double parse_number(const std::string& text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      double a = std::stod(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      std::string rest = s.substr(slash + 1);
      double b = std::stod(rest, &used);
      if (used != rest.size() || b == 0.0) throw std::invalid_argument(s);
      return a / b;
    }
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::bad_config, "not a number: '" + text + "'");
  }
}

Config Config::defaults(const std::string& command) {
  auto it = all_defaults().find(command);
  if (it == all_defaults().end()) throw Error(ErrorCode::bad_config, "unknown command '" + command + "'");
  Config c;
  c.command_ = command;
  c.values_ = it->second;
  return c;
}

void Config::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::bad_config, "cannot read config file '" + path + "'");
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::bad_config, path + ":" + std::to_string(n) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void Config::set(const std::string& key, const std::string& value) {
  if (!values_.count(key))
    throw Error(ErrorCode::bad_config, "unknown key '" + key + "' for command " + command_);
  values_[key] = value;
}

const std::string& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::bad_config, "missing key '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key) const { return parse_number(get(key)); }

int Config::integer(const std::string& key) const {
  double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw Error(ErrorCode::bad_config, "'" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split(get(key), ',')) out.push_back(parse_number(s));
  return out;
}

std::vector<std::string> Config::labels(const std::string& key) const {
  auto out = split(get(key), ';');
  if (out.empty()) throw Error(ErrorCode::bad_config, "'" + key + "' is empty");
  return out;
}

std::string Config::resolved() const {
  std::string s = "command=" + command_ + "\n";
  for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
  return s;
}

std::string Config::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : resolved()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Csv::render(const Config& cfg, const std::string& grid) const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  os << "# config_hash=" << cfg.hash() << "\n";
  os << "# grid=" << (grid.empty() ? "none" : grid) << "\n";
  os << "# tool_version=" << kToolVersion << "\n";
  for (const auto& n : notes) os << "# " << n << "\n";
  return os.str();
}

std::optional<EstimationGrid> grid_override(const Config& cfg, const Objective& obj) {
  if (!cfg.has("grid")) return std::nullopt;
  const std::string& g = cfg.get("grid");
  if (g.empty() || g == "auto") return std::nullopt;
  auto parts = split(g, ',');
  if (parts.size() != 3) throw Error(ErrorCode::bad_config, "grid must be 'auto' or 'lo,hi,points'");
  EstimationGrid grid = EstimationGrid::defaults_for(obj);
  double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
  grid.low = filled(obj.dimension(), lo);
  grid.high = filled(obj.dimension(), hi);
  grid.points_per_axis = static_cast<int>(parse_number(parts[2]));
  return grid;
}

EstimationGrid grid_for(const Config& cfg, const Objective& obj) {
  EstimationGrid grid = grid_override(cfg, obj).value_or(EstimationGrid::defaults_for(obj));
  if (cfg.has("seed")) grid.seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  grid.validate(obj);
  return grid;
}

// ---------------------------------------------------------------- constants

std::vector<ConstantRow> run_constants(const Config& cfg) {
  std::vector<ConstantRow> out;
  for (const auto& label : cfg.labels("objective")) {
    Objective obj = parse_objective(label);
    SampledObjective sample(obj, grid_for(cfg, obj));
    for (auto& e : estimate_all(sample)) out.push_back({obj.label(), std::move(e)});
  }
  return out;
}

CommandResult cmd_constants(const Config& cfg) {
  Csv csv;
  csv.header = {"label", "kind", "value", "achieving_point"};
  std::vector<std::string> grids;
  for (const auto& label : cfg.labels("objective")) {
    Objective obj = parse_objective(label);
    EstimationGrid grid = grid_for(cfg, obj);
    grids.push_back(grid.describe());
    SampledObjective sample(obj, grid);
    for (const auto& e : estimate_all(sample)) {
      std::string at = point_string(e.x);
      if (e.y) at += "|" + point_string(*e.y);
      csv.rows.push_back({obj.label(), to_string(e.constant.kind), fmt(e.constant.value), at});
    }
  }
  return finish(cfg, std::move(csv), join_grids(grids), 0);
}

// ------------------------------------------------------------- verify-graph

std::vector<EdgeReport> run_verify_graph(const Config& cfg) {
  const double tol = cfg.number("tol");
  std::vector<EdgeReport> out;
  for (const auto& label : cfg.labels("objective")) {
    Objective obj = parse_objective(label);
    SampledObjective sample(obj, grid_for(cfg, obj));
    ConstantTable est;
    for (const auto& e : estimate_all(sample)) est[e.constant.kind] = e.constant.value;
    for (const auto& edge : builtin_edges()) out.push_back(verify_edge(edge, sample, est, tol));
  }
  return out;
}

CommandResult cmd_verify_graph(const Config& cfg) {
  Csv csv;
  csv.header = {"edge_id", "objective_label", "source_constants", "converted", "verdict", "margin"};
  std::vector<std::string> grids;
  for (const auto& label : cfg.labels("objective")) {
    Objective obj = parse_objective(label);
    grids.push_back(grid_for(cfg, obj).describe());
  }
  int code = 0;
  for (const auto& r : run_verify_graph(cfg)) {
    std::string src;
    for (const auto& c : r.sources) src += (src.empty() ? "" : ";") + to_string(c.kind) + "=" + fmt(c.value);
    std::string conv = r.converted ? to_string(r.converted->kind) + "=" + fmt(r.converted->value) : "";
    if (r.status == EdgeReport::Status::violated) code = 1;
    csv.rows.push_back({r.edge_id, r.objective_label, src, conv, to_string(r.status), fmt(r.margin)});
  }
  for (const auto& x : excluded_edges()) csv.notes.push_back("excluded_edge=" + x.id + " (" + x.reason + ")");
  return finish(cfg, std::move(csv), join_grids(grids), code);
}

// -------------------------------------------------------------------- rates

std::vector<RateRow> run_rates(const Config& cfg) {
  const int iters = cfg.integer("iters");
  const double x0v = cfg.number("x0");
  const double slack = cfg.number("slack");
  const bool fixed = cfg.get("alpha") != "none";
  const std::string pairs = cfg.get("pairs");
  std::vector<std::string> wanted = pairs == "all" ? std::vector<std::string>{} : split(pairs, ';');

  std::vector<RateRow> out;
  for (const auto& label : cfg.labels("objective")) {
    Objective obj = parse_objective(label);
    const Vec x0 = filled(obj.dimension(), x0v);
    if (fixed) {
      RateRow row;
      row.label = obj.label();
      row.rule = "fixed";
      row.alpha = cfg.number("alpha");
      Trajectory t = gd(obj, x0, row.alpha, iters);
      row.measured = t.diverged ? kInf : max_step_ratio(t.dist);
      row.guaranteed = cfg.get("q") == "none" ? kInf : cfg.number("q");
      row.compliant = row.measured <= row.guaranteed + slack;
      row.lyapunov = Lyapunov::distance_sq;  // ratio reported on the distance itself
      out.push_back(row);
      continue;
    }
    SampledObjective sample(obj, grid_for(cfg, obj));
    ConstantTable est;
    for (const auto& e : estimate_all(sample)) est[e.constant.kind] = e.constant.value;
    const Extra extra = implied_extra(est);
    for (const auto& rule : rate_table()) {
      if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), rule.pair_id()) == wanted.end()) continue;
      if (!satisfies(extra, rule.extra)) continue;
      double L = est.at(rule.upper), mu = est.at(rule.lower);
      if (!(mu > 0.0) || !std::isfinite(L) || !(L >= mu)) continue;
      RateRow row;
      row.label = obj.label();
      row.rule = rule.pair_id();
      row.rate_id = rule.rate_id;
      row.extra = rule.extra;
      row.base = rule.is_base();
      row.L = L;
      row.mu = mu;
      row.alpha = rule.step_size(L, mu);
      row.guaranteed = rule.rate_for(L, mu);
      row.lyapunov = rule.lyapunov();
      Trajectory t = gd(obj, x0, row.alpha, iters);
      row.measured = t.diverged ? kInf : max_step_ratio(lyapunov_series(t, row.lyapunov));
      row.compliant = row.measured <= row.guaranteed + slack;
      out.push_back(row);
    }
  }
  return out;
}

CommandResult cmd_rates(const Config& cfg) {
  Csv csv;
  csv.header = {"label", "pair", "extra", "rate_formula", "base_proof", "L", "mu", "alpha",
                "lyapunov", "guaranteed_q", "measured", "compliant"};
  std::vector<std::string> grids;
  if (cfg.get("alpha") == "none")
    for (const auto& label : cfg.labels("objective")) grids.push_back(grid_for(cfg, parse_objective(label)).describe());
  int code = 0;
  for (const auto& r : run_rates(cfg)) {
    if (!r.compliant) code = 1;
    const bool fixed = r.rule == "fixed";
    csv.rows.push_back({r.label, r.rule, fixed ? "" : to_string(r.extra), r.rate_id,
                        fixed ? "" : (r.base ? "yes" : "no"), fixed ? "" : fmt(r.L), fixed ? "" : fmt(r.mu),
                        fmt(r.alpha), fixed ? "distance" : to_string(r.lyapunov), fmt(r.guaranteed),
                        fmt(r.measured), r.compliant ? "yes" : "no"});
  }
  return finish(cfg, std::move(csv), join_grids(grids), code);
}

// ----------------------------------------------------------------- hb-sweep

double SweepResult::rate(std::size_t beta_index, std::size_t alpha_index) const {
  return linear_or_inf(cells.at(beta_index).at(alpha_index));
}

SweepResult run_hb_sweep(const Config& cfg) {
  Objective obj = parse_objective(cfg.get("objective"));
  const int iters = cfg.integer("iters");
  const int na = cfg.integer("alpha_points"), nb = cfg.integer("beta_points");
  const double amax = cfg.number("alpha_max");
  if (na < 1 || nb < 1 || !(amax > 0.0)) throw Error(ErrorCode::bad_config, "hb-sweep: empty grid");
  const Vec x0 = filled(obj.dimension(), cfg.number("x0"));

  SweepResult r;
  for (int i = 0; i < na; ++i) r.alpha_grid.push_back(amax * (i + 1) / na);
  for (int j = 0; j < nb; ++j) r.beta_grid.push_back(static_cast<double>(j) / nb);
  r.cells.assign(nb, std::vector<RateEstimate>(na));
  parallel_for(
      static_cast<std::size_t>(na) * nb,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          std::size_t j = k / na, i = k % na;
          Trajectory t = heavy_ball(obj, x0, r.alpha_grid[i], r.beta_grid[j], iters);
          r.cells[j][i] = estimate_rate(t);
        }
      },
      64);

  const double L = cfg.number("L");
  for (double mu : cfg.numbers("mus")) {
    HbTuning h = hb_quadratic_rule(L, mu);
    TuningCell c;
    c.label = "mu=" + fmt(mu);
    c.mu = mu;
    c.alpha = h.alpha;
    c.beta = h.beta;
    long ai = std::lround(h.alpha / amax * na) - 1;
    long bj = std::lround(h.beta * nb);
    c.alpha_index = static_cast<std::size_t>(std::clamp<long>(ai, 0, na - 1));
    c.beta_index = static_cast<std::size_t>(std::clamp<long>(bj, 0, nb - 1));
    c.cell = r.cells[c.beta_index][c.alpha_index];
    c.run = estimate_rate(heavy_ball(obj, x0, h.alpha, h.beta, iters));
    r.tunings.push_back(c);
  }
  return r;
}

std::string tunings_json(const SweepResult& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return "inf";
  };
  for (const auto& t : r.tunings) {
    j.push_back({{"label", t.label},
                 {"mu", t.mu},
                 {"alpha", t.alpha},
                 {"beta", t.beta},
                 {"alpha_index", t.alpha_index},
                 {"beta_index", t.beta_index},
                 {"cell_alpha", r.alpha_grid[t.alpha_index]},
                 {"cell_beta", r.beta_grid[t.beta_index]},
                 {"cell_class", to_string(t.cell.cls)},
                 {"cell_rate", num(linear_or_inf(t.cell))},
                 {"run_class", to_string(t.run.cls)},
                 {"run_rate", num(linear_or_inf(t.run))}});
  }
  return j.dump(2) + "\n";
}

CommandResult cmd_hb_sweep(const Config& cfg) {
  SweepResult r = run_hb_sweep(cfg);
  Csv csv;
  csv.header = {"beta\\alpha"};
  for (double a : r.alpha_grid) csv.header.push_back(fmt(a));
  for (std::size_t j = 0; j < r.beta_grid.size(); ++j) {
    std::vector<std::string> row = {fmt(r.beta_grid[j])};
    for (std::size_t i = 0; i < r.alpha_grid.size(); ++i) row.push_back(fmt(r.rate(j, i)));
    csv.rows.push_back(std::move(row));
  }
  int code = 0;
  for (const auto& t : r.tunings) {
    csv.notes.push_back("tuning " + t.label + " alpha=" + fmt(t.alpha) + " beta=" + fmt(t.beta) +
                        " cell=(" + std::to_string(t.alpha_index) + "," + std::to_string(t.beta_index) +
                        ") cell_class=" + to_string(t.cell.cls) + " run_class=" + to_string(t.run.cls));
  }
  std::string grid = "alpha=(0," + cfg.get("alpha_max") + "]x" + cfg.get("alpha_points") + " beta=[0,1)x" +
                     cfg.get("beta_points");
  CommandResult res = finish(cfg, std::move(csv), grid, code);
  res.sidecar = tunings_json(r);
  return res;
}

// ------------------------------------------------------------ perturb-study

std::vector<PerturbRow> run_perturb_study(const Config& cfg) {
  Objective base = parse_objective(cfg.get("objective"));
  const std::string family = cfg.get("perturbation");
  const double alpha = cfg.number("alpha");
  const int iters = cfg.integer("iters");
  const double radius = cfg.number("radius");
  const std::vector<double> ladder = cfg.numbers("ladder");
  const std::vector<double> x0s = cfg.numbers("x0s");

  std::vector<Trajectory> ref;
  for (double x0 : x0s) ref.push_back(gd(base, filled(base.dimension(), x0), alpha, iters));

  std::vector<PerturbRow> rows(ladder.size());
  parallel_for(
      ladder.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          PerturbRow& row = rows[k];
          row.eps = ladder[k];
          std::optional<Objective> pert;
          if (row.eps != 0.0) {
            Perturbation h = parse_perturbation(family + ":" + fmt(row.eps), base.minimizers());
            row.star_norm = star_norm(h).value;
            pert = perturb(base, h);
          }
          const Objective& f = pert ? *pert : base;
          for (std::size_t s = 0; s < x0s.size(); ++s) {
            Trajectory t = gd(f, filled(f.dimension(), x0s[s]), alpha, iters);
            for (std::size_t i = 0; i < std::min(t.size(), ref[s].size()); ++i)
              row.max_deviation = std::max(row.max_deviation, (t.iterates[i] - ref[s].iterates[i]).norm());
            if (t.size() != ref[s].size()) row.max_deviation = kInf;
            auto hit = first_hit(t, radius);
            auto hit0 = first_hit(ref[s], radius);
            row.first_hits.push_back(hit ? static_cast<long>(*hit) : -1);
            row.baseline_hits.push_back(hit0 ? static_cast<long>(*hit0) : -1);
            row.max_first_hit_shift =
                std::max<int>(row.max_first_hit_shift, std::abs(row.first_hits.back() - row.baseline_hits.back()));
          }
        }
      },
      1);
  return rows;
}

CommandResult cmd_perturb_study(const Config& cfg) {
  auto rows = run_perturb_study(cfg);
  Csv csv;
  csv.header = {"eps", "star_norm", "max_deviation", "first_hit_shift", "first_hits", "baseline_hits"};
  auto hits = [](const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
  };
  for (const auto& r : rows)
    csv.rows.push_back({fmt(r.eps), fmt(r.star_norm), fmt(r.max_deviation), std::to_string(r.max_first_hit_shift),
                        hits(r.first_hits), hits(r.baseline_hits)});
  csv.notes.push_back("objective=" + cfg.get("objective") + " perturbation=" + cfg.get("perturbation") +
                      " alpha=" + cfg.get("alpha") + " x0s=" + cfg.get("x0s"));
  return finish(cfg, std::move(csv), "star_norm default box around the minimizers", 0);
}

// ------------------------------------------------------------ discontinuity

std::vector<DiscontinuityRow> run_discontinuity(const Config& cfg) {
  const std::string base_label = cfg.get("objective");
  Objective base = parse_objective(base_label);
  const std::vector<double> ladder = cfg.numbers("ladder");
  const double x0v = cfg.number("x0");
  const double fixed_alpha = cfg.number("fixed_alpha");
  const int iters = cfg.integer("iters");

  struct Job {
    std::string family;
    double eps;
  };
  std::vector<Job> jobs;
  for (const char* fam : {"f_eps", "omega"})
    for (double e : ladder) jobs.push_back({fam, e});

  std::vector<DiscontinuityRow> rows(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          DiscontinuityRow& r = rows[k];
          r.family = jobs[k].family;
          r.eps = jobs[k].eps;
          std::optional<Objective> f;
          if (r.family == "f_eps") {
            f = make_f_eps(r.eps);
            r.star_norm = star_norm(diff_as_perturbation(base, *f)).value;
          } else {
            Perturbation h = make_omega_eps(r.eps, vec1(1.0), base.minimizers().anchor());
            r.star_norm = star_norm(h).value;
            f = perturb(base, h);
          }
          EstimationGrid grid = grid_for(cfg, *f);
          SampledObjective sample(*f, grid);
          r.L_sc = estimate_constant(ConditionKind{Family::SC, Side::upper}, sample).constant.value;
          r.mu_sc = estimate_constant(ConditionKind{Family::SC, Side::lower}, sample).constant.value;
          const Vec x0 = filled(f->dimension(), x0v);
          r.naive_alpha = 2.0 / (r.L_sc + r.mu_sc);
          r.naive_rate = linear_or_inf(estimate_rate(gd(*f, x0, r.naive_alpha, iters)));
          r.fixed_alpha = fixed_alpha;
          r.fixed_rate = linear_or_inf(estimate_rate(gd(*f, x0, fixed_alpha, iters)));
        }
      },
      1);
  return rows;
}

CommandResult cmd_discontinuity(const Config& cfg) {
  auto rows = run_discontinuity(cfg);
  Csv csv;
  csv.header = {"family", "eps", "star_norm", "L_sc", "mu_sc", "naive_alpha", "naive_rate", "fixed_alpha",
                "fixed_rate"};
  for (const auto& r : rows)
    csv.rows.push_back({r.family, fmt(r.eps), fmt(r.star_norm), fmt(r.L_sc), fmt(r.mu_sc), fmt(r.naive_alpha),
                        fmt(r.naive_rate), fmt(r.fixed_alpha), fmt(r.fixed_rate)});
  csv.notes.push_back("base=" + cfg.get("objective") + " x0=" + cfg.get("x0") + " iters=" + cfg.get("iters"));
  csv.notes.push_back("rates are per-iteration value-gap factors; inf means no linear convergence");
  Objective probe = make_f_eps(rows.empty() ? 0.1 : rows.front().eps);
  return finish(cfg, std::move(csv), grid_for(cfg, probe).describe(), 0);
}

// ----------------------------------------------------------------- logistic

LogisticResult run_logistic(const Config& cfg) {
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const int d = cfg.integer("d"), m = cfg.integer("m");
  const int iters = cfg.integer("iters");
  const std::string params = "seed=" + std::to_string(seed) + ",d=" + std::to_string(d) + ",m=" + std::to_string(m);
  Objective f = parse_objective("logistic:" + params);
  Objective f2 = parse_objective("logistic_sq:" + params);

  LogisticResult r;
  r.f_star = f.f_star();
  EstimationGrid grid =
      EstimationGrid::centered(f.minimizers().anchor(), cfg.number("half_width"), cfg.integer("points"));
  r.grid = grid.describe();
  SampledObjective sample(f2, grid);
  ConstantTable est;
  for (const auto& e : estimate_all(sample)) est[e.constant.kind] = e.constant.value;
  const ConditionKind qgm{Family::QG, Side::lower}, qgp{Family::QG, Side::upper};
  r.qg_minus = est.at(qgm);
  r.qg_plus = est.at(qgp);

  const Vec x0 = Vec::Zero(d);
  const double fs2 = r.f_star * r.f_star;
  auto sq_gap = [fs2](const Trajectory& t) {
    std::vector<double> s;
    for (double v : t.values) s.push_back(v * v - fs2);
    return s;
  };
  auto twice = [](double t) { return 2.0 * t; };

  {
    LogisticRun run;
    run.name = "gd_f";
    run.objective = f.label();
    run.alpha = 1.0 / logistic_smoothness_bound(LogisticDataset::synthetic(seed, d, m));
    Trajectory t = gd(f, x0, run.alpha, iters);
    run.rate = estimate_rate(t);
    run.final_gap = t.subopt.back();
    r.runs.push_back(run);
  }
  const TuningRule& rule = gd_rule(qgp, qgm, Extra::convex);
  r.guaranteed_q = rule.rate_for(r.qg_plus, r.qg_minus);
  const std::pair<std::string, double> adaptive[] = {
      {"adaptive_table", rule.step_size(r.qg_plus, r.qg_minus)},
      {"adaptive_practical", 1.0 / est.at(ConditionKind{Family::SC, Side::upper})},
  };
  for (const auto& [name, alpha] : adaptive) {
    LogisticRun run;
    run.name = name;
    run.objective = f2.label();
    run.alpha = alpha;
    Trajectory t = adaptive_gd(f, x0, alpha, twice, iters);
    auto s = sq_gap(t);
    run.rate = estimate_rate(s, t.diverged);
    run.final_gap = s.back();
    r.runs.push_back(run);
  }

  const int n = cfg.integer("oracle_iters");
  const double alpha = r.runs[1].alpha;
  Trajectory a = adaptive_gd(f, x0, alpha, twice, n);
  Trajectory b = gd(f2, x0, alpha, n);
  if (a.size() != b.size()) {
    r.oracle_max_diff = kInf;
  } else {
    for (std::size_t k = 0; k < a.size(); ++k)
      r.oracle_max_diff = std::max(r.oracle_max_diff, (a.iterates[k] - b.iterates[k]).lpNorm<Eigen::Infinity>());
  }
  return r;
}

CommandResult cmd_logistic(const Config& cfg) {
  LogisticResult r = run_logistic(cfg);
  Csv csv;
  csv.header = {"quantity", "value"};
  csv.rows.push_back({"f_star", fmt(r.f_star)});
  csv.rows.push_back({"f2.QG-", fmt(r.qg_minus)});
  csv.rows.push_back({"f2.QG+", fmt(r.qg_plus)});
  csv.rows.push_back({"f2.guaranteed_q", fmt(r.guaranteed_q)});
  for (const auto& run : r.runs) {
    csv.rows.push_back({run.name + ".objective", run.objective});
    csv.rows.push_back({run.name + ".alpha", fmt(run.alpha)});
    csv.rows.push_back({run.name + ".class", to_string(run.rate.cls)});
    csv.rows.push_back({run.name + ".fit_rate", fmt(run.rate.fit_rate)});
    csv.rows.push_back({run.name + ".final_gap", fmt(run.final_gap)});
  }
  csv.rows.push_back({"oracle_max_diff", fmt(r.oracle_max_diff)});
  int code = 0;
  if (!(r.qg_minus > 0.0) || !std::isfinite(r.qg_plus) || !(r.oracle_max_diff <= 1e-12)) code = 1;
  return finish(cfg, std::move(csv), r.grid, code);
}

// ------------------------------------------------------------------ dispatch

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"constants", "verify-graph", "rates", "hb-sweep",
                                                 "perturb-study", "discontinuity", "logistic", "edges",
                                                 "table"};
  return names;
}

CommandResult run_command(const Config& cfg) {
  const std::string& c = cfg.command();
  if (c == "constants") return cmd_constants(cfg);
  if (c == "verify-graph") return cmd_verify_graph(cfg);
  if (c == "rates") return cmd_rates(cfg);
  if (c == "hb-sweep") return cmd_hb_sweep(cfg);
  if (c == "perturb-study") return cmd_perturb_study(cfg);
  if (c == "discontinuity") return cmd_discontinuity(cfg);
  if (c == "logistic") return cmd_logistic(cfg);
  CommandResult r;
  if (c == "edges") {
    r.body = edges_json();
    return r;
  }
  if (c == "table") {
    r.body = rate_table_csv();
    return r;
  }
  throw Error(ErrorCode::bad_config, "unknown command '" + c + "'");
}

}  // namespace condnum
