#include "condnum/tuning.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace condnum {
namespace {

constexpr ConditionKind SCp{Family::SC, Side::upper}, SCm{Family::SC, Side::lower};
constexpr ConditionKind SSCp{Family::StarSC, Side::upper}, SSCm{Family::StarSC, Side::lower};
constexpr ConditionKind RSIp{Family::RSI, Side::upper}, RSIm{Family::RSI, Side::lower};
constexpr ConditionKind EBp{Family::EB, Side::upper}, EBm{Family::EB, Side::lower};
constexpr ConditionKind PLp{Family::PL, Side::upper}, PLm{Family::PL, Side::lower};
constexpr ConditionKind QGp{Family::QG, Side::upper}, QGm{Family::QG, Side::lower};

using RateFn = std::function<double(double)>;

const std::map<std::string, RateFn>& formulas() {
  static const std::map<std::string, RateFn> f = {
      {"((k-1)/(k+1))^2", [](double k) { return std::pow((k - 1) / (k + 1), 2); }},
      {"(1-1/k)^2", [](double k) { return std::pow(1 - 1 / k, 2); }},
      {"1-1/k", [](double k) { return 1 - 1 / k; }},
      {"1-1/(2k)", [](double k) { return 1 - 1 / (2 * k); }},
      {"1-1/(4k)", [](double k) { return 1 - 1 / (4 * k); }},
      {"1-1/k^2", [](double k) { return 1 - 1 / (k * k); }},
      {"1-1/(4k^2)", [](double k) { return 1 - 1 / (4 * k * k); }},
      {"1-1/(16k^2)", [](double k) { return 1 - 1 / (16 * k * k); }},
      {"1-1/(4k^4)", [](double k) { return 1 - 1 / (4 * std::pow(k, 4)); }},
      {"1-1/(16k^4)", [](double k) { return 1 - 1 / (16 * std::pow(k, 4)); }},
  };
  return f;
}

std::vector<BaseRule> make_base_rules() {
  return {
      {"SC+&SC-", SCp, SCm, Extra::none, [](double L, double mu) { return 2 / (L + mu); },
       [](double k) { return std::pow((k - 1) / (k + 1), 2); }, Lyapunov::distance_sq},
      {"SC+&PL-", SCp, PLm, Extra::none, [](double L, double) { return 1 / L; },
       [](double k) { return 1 - 1 / k; }, Lyapunov::value_gap},
      {"PL+&*SC-", PLp, SSCm, Extra::none, [](double L, double) { return 1 / L; },
       [](double k) { return 1 - 1 / k; }, Lyapunov::distance_sq},
      {"PL+&RSI-", PLp, RSIm, Extra::star_convex, [](double L, double) { return 1 / (2 * L); },
       [](double k) { return 1 - 1 / (2 * k); }, Lyapunov::distance_sq},
      {"EB+&RSI-", EBp, RSIm, Extra::none, [](double L, double mu) { return mu / (L * L); },
       [](double k) { return 1 - 1 / (k * k); }, Lyapunov::distance_sq},
      {"QG+&SC-", QGp, SCm, Extra::none, [](double L, double) { return 1 / L; },
       [](double k) { return std::pow(1 - 1 / k, 2); }, Lyapunov::distance_sq},
  };
}

using ToBase = std::function<std::pair<double, double>(double, double)>;

const ToBase kHalfMu = [](double L, double mu) { return std::make_pair(L, mu / 2); };
const ToBase kMuSqOverL = [](double L, double mu) { return std::make_pair(L, mu * mu / L); };
const ToBase kMuSqOver2L = [](double L, double mu) { return std::make_pair(L, mu * mu / (2 * L)); };
const ToBase kDoubleL = [](double L, double mu) { return std::make_pair(2 * L, mu); };
const ToBase kDoubleLHalfMu = [](double L, double mu) { return std::make_pair(2 * L, mu / 2); };
const ToBase kDoubleLMuSq = [](double L, double mu) { return std::make_pair(2 * L, mu * mu / (2 * L)); };
const ToBase kSame = [](double L, double mu) { return std::make_pair(L, mu); };

std::vector<TuningRule> make_table() {
  std::vector<TuningRule> t;
  auto cell = [&t](ConditionKind up, ConditionKind lo, Extra ex, std::string rate_id,
                   std::string base, ToBase to_base, std::vector<std::string> chain) {
    TuningRule r;
    r.upper = up;
    r.lower = lo;
    r.extra = ex;
    r.rate = formulas().at(rate_id);
    r.rate_id = std::move(rate_id);
    r.base = &find_base_rule(base);
    r.chain = std::move(chain);
    const bool is_base = r.chain.empty() && r.base->upper == up && r.base->lower == lo;
    if (!is_base) r.to_base = std::move(to_base);
    t.push_back(std::move(r));
  };
  const std::string sc_pl = "SC+(L) -> PL+(L)";
  const std::string pl_qg = "PL+(L) -> QG+(L)";
  const std::string eb_qg = "EB+(L) -> RSI+(L) -> QG+(L)";
  const std::string qg_rsi_half = "*SC-(0) & QG-(mu) -> RSI-(mu/2)";
  const std::string plm_qgm = "PL-(mu) -> QG-(mu)";
  const std::string ebm_plm = "EB-(mu) & QG+(L) -> PL-(mu^2/L) -> QG-(mu^2/L)";
  const std::string qg_rsi_sq = "*SC-(0) & QG-(mu^2/L) -> RSI-(mu^2/(2L))";
  const std::string ssc_eb = "SC-(0) & *SC+(L) -> EB+(L)";
  const std::string ssc_qg = "*SC+(L) -> QG+(L)";
  const std::string rsi_qg = "RSI+(L) -> QG+(L)";
  const std::string qg_eb2 = "SC-(0) & QG+(L) -> EB+(2L)";

  // SC+ row
  cell(SCp, SCm, Extra::none, "((k-1)/(k+1))^2", "SC+&SC-", kSame, {});
  cell(SCp, SSCm, Extra::none, "1-1/k", "SC+&PL-", kSame, {"*SC-(mu) -> PL-(mu)"});
  cell(SCp, PLm, Extra::none, "1-1/k", "SC+&PL-", kSame, {});
  cell(SCp, RSIm, Extra::none, "1-1/k^2", "SC+&PL-", kMuSqOverL,
       {"RSI-(mu) -> EB-(mu)", sc_pl + " -> QG+(L)", "EB-(mu) & QG+(L) -> PL-(mu^2/L)"});
  cell(SCp, RSIm, Extra::star_convex, "1-1/(2k)", "PL+&RSI-", kSame, {sc_pl});
  cell(SCp, EBm, Extra::none, "1-1/k^2", "SC+&PL-", kMuSqOverL,
       {sc_pl + " -> QG+(L)", "EB-(mu) & QG+(L) -> PL-(mu^2/L)"});
  cell(SCp, QGm, Extra::star_convex, "1-1/(4k)", "PL+&RSI-", kHalfMu, {sc_pl, qg_rsi_half});
  // PL+ row
  cell(PLp, SCm, Extra::none, "(1-1/k)^2", "QG+&SC-", kSame, {pl_qg});
  cell(PLp, SSCm, Extra::none, "1-1/k", "PL+&*SC-", kSame, {});
  cell(PLp, PLm, Extra::star_convex, "1-1/(4k)", "PL+&RSI-", kHalfMu, {plm_qgm, qg_rsi_half});
  cell(PLp, RSIm, Extra::none, "1-1/k^2", "EB+&RSI-", kSame, {pl_qg, "PL+(L) & QG+(L) -> EB+(L)"});
  cell(PLp, RSIm, Extra::star_convex, "1-1/(2k)", "PL+&RSI-", kSame, {});
  cell(PLp, EBm, Extra::star_convex, "1-1/(4k^2)", "PL+&RSI-", kMuSqOver2L, {pl_qg, ebm_plm, qg_rsi_sq});
  cell(PLp, QGm, Extra::star_convex, "1-1/(4k)", "PL+&RSI-", kHalfMu, {qg_rsi_half});
  // EB+ row
  cell(EBp, SCm, Extra::none, "(1-1/k)^2", "QG+&SC-", kSame, {eb_qg});
  cell(EBp, SSCm, Extra::none, "1-1/k^2", "EB+&RSI-", kSame, {"*SC-(mu) -> RSI-(mu)"});
  cell(EBp, PLm, Extra::star_convex, "1-1/(4k^2)", "EB+&RSI-", kHalfMu, {plm_qgm, qg_rsi_half});
  cell(EBp, RSIm, Extra::none, "1-1/k^2", "EB+&RSI-", kSame, {});
  cell(EBp, EBm, Extra::star_convex, "1-1/(4k^4)", "EB+&RSI-", kMuSqOver2L, {eb_qg, ebm_plm, qg_rsi_sq});
  cell(EBp, QGm, Extra::star_convex, "1-1/(4k^2)", "EB+&RSI-", kHalfMu, {qg_rsi_half});
  // *SC+ row
  cell(SSCp, SCm, Extra::none, "(1-1/k)^2", "QG+&SC-", kSame, {ssc_qg});
  cell(SSCp, SSCm, Extra::convex, "1-1/k^2", "EB+&RSI-", kSame, {ssc_eb, "*SC-(mu) -> RSI-(mu)"});
  cell(SSCp, PLm, Extra::convex, "1-1/(4k^2)", "EB+&RSI-", kHalfMu, {ssc_eb, plm_qgm, qg_rsi_half});
  cell(SSCp, RSIm, Extra::convex, "1-1/k^2", "EB+&RSI-", kSame, {ssc_eb});
  cell(SSCp, EBm, Extra::convex, "1-1/(4k^4)", "EB+&RSI-", kMuSqOver2L, {ssc_eb, ssc_qg, ebm_plm, qg_rsi_sq});
  cell(SSCp, QGm, Extra::convex, "1-1/(4k^2)", "EB+&RSI-", kHalfMu, {ssc_eb, qg_rsi_half});
  // RSI+ and QG+ rows
  for (ConditionKind up : {RSIp, QGp}) {
    std::vector<std::string> pre;
    if (up == RSIp) pre.push_back(rsi_qg);
    auto with = [&pre](std::vector<std::string> more) {
      std::vector<std::string> c = pre;
      c.insert(c.end(), more.begin(), more.end());
      return c;
    };
    cell(up, SCm, Extra::none, "(1-1/k)^2", "QG+&SC-", kSame, with({}));
    cell(up, SSCm, Extra::convex, "1-1/(4k^2)", "EB+&RSI-", kDoubleL, with({qg_eb2, "*SC-(mu) -> RSI-(mu)"}));
    cell(up, PLm, Extra::convex, "1-1/(16k^2)", "EB+&RSI-", kDoubleLHalfMu, with({qg_eb2, plm_qgm, qg_rsi_half}));
    cell(up, RSIm, Extra::convex, "1-1/(4k^2)", "EB+&RSI-", kDoubleL, with({qg_eb2}));
    cell(up, EBm, Extra::convex, "1-1/(16k^4)", "EB+&RSI-", kDoubleLMuSq, with({qg_eb2, ebm_plm, qg_rsi_sq}));
    cell(up, QGm, Extra::convex, "1-1/(16k^2)", "EB+&RSI-", kDoubleLHalfMu, with({qg_eb2, qg_rsi_half}));
  }
  return t;
}

}  // namespace

const std::vector<BaseRule>& base_rules() {
  static const std::vector<BaseRule> rules = make_base_rules();
  return rules;
}

const BaseRule& find_base_rule(const std::string& id) {
  for (const auto& r : base_rules())
    if (r.id == id) return r;
  throw Error(ErrorCode::bad_label, "unknown base rule '" + id + "'");
}

double TuningRule::step_size(double L, double mu) const {
  auto [Lb, mub] = to_base ? to_base(L, mu) : std::make_pair(L, mu);
  return base->step_size(Lb, mub);
}

double TuningRule::derived_rate(double L, double mu) const {
  auto [Lb, mub] = to_base ? to_base(L, mu) : std::make_pair(L, mu);
  return base->rate(Lb / mub);
}

const std::vector<ConditionKind>& table_rows() {
  static const std::vector<ConditionKind> r = {SCp, PLp, EBp, SSCp, RSIp, QGp};
  return r;
}

const std::vector<ConditionKind>& table_columns() {
  static const std::vector<ConditionKind> c = {SCm, SSCm, PLm, RSIm, EBm, QGm};
  return c;
}

const std::vector<TuningRule>& rate_table() {
  static const std::vector<TuningRule> t = make_table();
  return t;
}

const TuningRule& gd_rule(ConditionKind upper, ConditionKind lower, Extra extra) {
  if (upper.side != Side::upper || lower.side != Side::lower)
    throw Error(ErrorCode::invalid_parameter, "gd_rule: need an (upper, lower) pair");
  const TuningRule* pick = nullptr;
  bool exists = false;
  for (const auto& r : rate_table()) {
    if (r.upper != upper || r.lower != lower) continue;
    exists = true;
    if (!satisfies(extra, r.extra)) continue;
    if (pick == nullptr || satisfies(r.extra, pick->extra)) pick = &r;
  }
  if (!exists) throw Error(ErrorCode::invalid_parameter, "gd_rule: pair not in table");
  if (pick == nullptr)
    throw Error(ErrorCode::no_guarantee, to_string(upper) + "&" + to_string(lower) +
                                             " needs an extra assumption (" + to_string(extra) + " given)");
  return *pick;
}

HbTuning hb_quadratic_rule(double L, double mu) {
  if (!(mu > 0.0) || !(L >= mu) || !std::isfinite(L))
    throw Error(ErrorCode::invalid_parameter, "hb_quadratic_rule: need L >= mu > 0");
  double sL = std::sqrt(L), sm = std::sqrt(mu);
  double sk = std::sqrt(L / mu);
  return {4.0 / ((sL + sm) * (sL + sm)), std::pow((sk - 1) / (sk + 1), 2)};
}

Guarantee best_guarantee(const ConstantTable& constants, Extra extra) {
  Guarantee best{nullptr, 0, 0, 0, std::numeric_limits<double>::infinity()};
  for (const auto& r : rate_table()) {
    if (!satisfies(extra, r.extra)) continue;
    auto u = constants.find(r.upper);
    auto l = constants.find(r.lower);
    if (u == constants.end() || l == constants.end()) continue;
    double L = u->second, mu = l->second;
    if (!(L > 0.0) || !std::isfinite(L) || !(mu > 0.0) || !std::isfinite(mu)) continue;
    double q = std::max(0.0, r.rate_for(L, mu));
    if (q < best.q) best = {&r, L, mu, r.step_size(L, mu), q};
  }
  if (best.rule == nullptr) throw Error(ErrorCode::no_guarantee, "no table cell is satisfied");
  return best;
}

std::string rate_table_csv() {
  std::ostringstream os;
  os << "upper";
  for (auto c : table_columns()) os << "," << to_string(c);
  os << "\n";
  for (auto row : table_rows()) {
    os << to_string(row);
    for (auto col : table_columns()) {
      std::string entry;
      for (const auto& r : rate_table()) {
        if (r.upper != row || r.lower != col) continue;
        if (!entry.empty()) entry += " / ";
        entry += r.rate_id;
        if (r.extra == Extra::star_convex) entry += " [star-convex]";
        if (r.extra == Extra::convex) entry += " [convex]";
      }
      os << "," << entry;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace condnum
