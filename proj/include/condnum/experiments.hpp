#pragma once

#include "condnum/conditions.hpp"
#include "condnum/implication.hpp"
#include "condnum/optimize.hpp"
#include "condnum/tuning.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace condnum {

inline constexpr const char* kToolVersion = "0.1.0";

// Flat key=value configuration with per-command defaults.
class Config {
 public:
  static Config defaults(const std::string& command);
  // Lines "key = value"; '#' starts a comment. Unknown keys are rejected.
  void merge_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;     // comma list, a/b allowed
  std::vector<std::string> labels(const std::string& key) const;  // ';' list

  const std::string& command() const { return command_; }
  std::string resolved() const;  // sorted key=value lines
  std::string hash() const;      // FNV-1a of resolved(), hex

 private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

double parse_number(const std::string& s);  // decimal or a/b

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // extra "# key=value" lines

  // Header, rows, then "# config_hash", "# grid", "# tool_version" and notes.
  std::string render(const Config& cfg, const std::string& grid) const;
};

std::optional<EstimationGrid> grid_override(const Config& cfg, const Objective& obj);
EstimationGrid grid_for(const Config& cfg, const Objective& obj);

struct CommandResult {
  Csv csv;
  std::string grid;
  std::string body;     // rendered output
  std::string sidecar;  // JSON written to <out>.tunings.json, when non-empty
  int exit_code = 0;    // 1 when a checked invariant is violated
};

// --- constants ---
struct ConstantRow {
  std::string label;
  Estimate estimate;
};
std::vector<ConstantRow> run_constants(const Config& cfg);
CommandResult cmd_constants(const Config& cfg);

// --- verify-graph ---
std::vector<EdgeReport> run_verify_graph(const Config& cfg);
CommandResult cmd_verify_graph(const Config& cfg);

// --- rates ---
struct RateRow {
  std::string label;
  std::string rule;  // pair id, or "fixed"
  std::string rate_id;
  Extra extra = Extra::none;
  bool base = false;
  double L = 0, mu = 0, alpha = 0, guaranteed = 0, measured = 0;
  Lyapunov lyapunov = Lyapunov::value_gap;
  bool compliant = true;
};
std::vector<RateRow> run_rates(const Config& cfg);
CommandResult cmd_rates(const Config& cfg);

// --- hb-sweep ---
struct TuningCell {
  std::string label;
  double mu = 0, alpha = 0, beta = 0;
  std::size_t alpha_index = 0, beta_index = 0;
  RateEstimate cell;  // estimate at the grid cell containing the tuning
  RateEstimate run;   // estimate at the exact tuning
};
struct SweepResult {
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;
  std::vector<std::vector<RateEstimate>> cells;  // [beta][alpha]
  std::vector<TuningCell> tunings;

  // fit rate for converged_linear cells, +inf otherwise
  double rate(std::size_t beta_index, std::size_t alpha_index) const;
};
SweepResult run_hb_sweep(const Config& cfg);
CommandResult cmd_hb_sweep(const Config& cfg);
std::string tunings_json(const SweepResult& r);

// --- perturb-study ---
struct PerturbRow {
  double eps = 0;
  double star_norm = 0;
  double max_deviation = 0;
  int max_first_hit_shift = 0;
  std::vector<long> first_hits;      // per x0, -1 if never
  std::vector<long> baseline_hits;   // unperturbed, per x0
};
std::vector<PerturbRow> run_perturb_study(const Config& cfg);
CommandResult cmd_perturb_study(const Config& cfg);

// --- discontinuity ---
struct DiscontinuityRow {
  std::string family;  // "f_eps" (h = f_eps - f_0) or "omega" (f_0 + omega_eps)
  double eps = 0;
  double star_norm = 0;
  double L_sc = 0, mu_sc = 0;
  double naive_alpha = 0, naive_rate = 0;
  double fixed_alpha = 0, fixed_rate = 0;
};
std::vector<DiscontinuityRow> run_discontinuity(const Config& cfg);
CommandResult cmd_discontinuity(const Config& cfg);

// --- logistic ---
struct LogisticRun {
  std::string name;
  std::string objective;
  double alpha = 0;
  RateEstimate rate;
  double final_gap = 0;
};
struct LogisticResult {
  double f_star = 0;
  double qg_minus = 0, qg_plus = 0;  // of f^2 on the grid
  double guaranteed_q = 0;
  std::vector<LogisticRun> runs;
  double oracle_max_diff = 0;  // adaptive GD on f vs GD on f^2
  std::string grid;
};
LogisticResult run_logistic(const Config& cfg);
CommandResult cmd_logistic(const Config& cfg);

// Runs the named subcommand; throws Error on bad input.
CommandResult run_command(const Config& cfg);
const std::vector<std::string>& command_names();

}  // namespace condnum
