// condnum: experiment runner. Writes CSV to --out (or stdout).
#include "condnum/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

struct Flags {
  std::string objective, config, out, grid, seed, iters;
  std::vector<std::string> sets;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--objective", f.objective, "objective label(s), ';' separated");
  sub->add_option("--config", f.config, "key=value config file");
  sub->add_option("--out", f.out, "output path (default stdout)");
  sub->add_option("--grid", f.grid, "'auto' or 'lo,hi,points'");
  sub->add_option("--seed", f.seed, "seed");
  sub->add_option("--iters", f.iters, "iteration count");
  sub->add_option("--set", f.sets, "override, key=value (repeatable)");
}

int run(const std::string& command, const Flags& f) {
  using namespace condnum;
  Config cfg = Config::defaults(command);
  if (!f.config.empty()) cfg.merge_file(f.config);
  for (const auto& s : f.sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::bad_config, "--set expects key=value, got '" + s + "'");
    cfg.set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!f.objective.empty()) cfg.set("objective", f.objective);
  if (!f.grid.empty()) cfg.set("grid", f.grid);
  if (!f.seed.empty()) cfg.set("seed", f.seed);
  if (!f.iters.empty()) cfg.set("iters", f.iters);

  std::cerr << "# resolved config (hash " << cfg.hash() << ")\n" << cfg.resolved();

  CommandResult r = run_command(cfg);
  if (f.out.empty()) {
    std::cout << r.body;
  } else {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw Error(ErrorCode::bad_config, "cannot write '" + f.out + "'");
    os << r.body;
  }
  if (!r.sidecar.empty()) {
    std::string path = f.out.empty() ? "hb_sweep.tunings.json" : f.out + ".tunings.json";
    std::ofstream js(path, std::ios::binary);
    js << r.sidecar;
    std::cerr << "# tunings written to " << path << "\n";
  }
  if (r.exit_code != 0) std::cerr << "invariant violation reported in output\n";
  return r.exit_code;
}

const std::map<std::string, std::string> kAbout = {
    {"constants", "estimate the twelve condition constants"},
    {"verify-graph", "check every implication edge on a corpus"},
    {"rates", "run each table rule and compare measured and guaranteed rates"},
    {"hb-sweep", "heavy-ball step/momentum grid with tuning overlay"},
    {"perturb-study", "trajectory deviation under shrinking perturbations"},
    {"discontinuity", "constants and naive-tuning rates along perturbation ladders"},
    {"logistic", "adaptive step on squared logistic regression"},
    {"edges", "dump the implication graph as JSON"},
    {"table", "print the rate table"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condition-number experiments"};
  app.require_subcommand(1);
  Flags flags;
  for (const auto& name : condnum::command_names()) add_flags(app.add_subcommand(name, kAbout.at(name)), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run(app.get_subcommands().front()->get_name(), flags);
  } catch (const condnum::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
