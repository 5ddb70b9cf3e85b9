#include "condnum/labels.hpp"

#include "condnum/corpus.hpp"
#include "condnum/logistic.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <vector>

namespace condnum {
namespace {

[[noreturn]] void bad(const std::string& label, const std::string& why) {
  throw Error(ErrorCode::bad_label, "'" + label + "': " + why);
}

double number(const std::string& s, const std::string& label) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) bad(label, "expected a number, got '" + s + "'");
  return v;
}

std::vector<double> numbers(const std::string& s, const std::string& label) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(number(s.substr(start, comma - start), label));
    start = comma + 1;
  }
  return out;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

// Splits at the first `sep` that is followed by a letter, so exponents like 1e+5 stay intact.
// sep followed by a name, or by a numeric scale and '*'.
std::size_t split_point(const std::string& s, char sep) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != sep) continue;
    if (std::isalpha(static_cast<unsigned char>(s[i + 1]))) return i;
    std::size_t j = i + 1;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' || s[j] == '/')) ++j;
    if (j > i + 1 && j + 1 < s.size() && s[j] == '*') return i;
  }
  return std::string::npos;
}

std::map<std::string, std::string> keyvals(const std::string& s, const std::string& label) {
  std::map<std::string, std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    std::string kv = s.substr(start, comma - start);
    auto eq = kv.find('=');
    if (eq == std::string::npos) bad(label, "expected key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
    start = comma + 1;
  }
  return out;
}

Objective parse_base(const std::string& label) {
  auto colon = label.find(':');
  std::string head = label.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : label.substr(colon + 1);
  if (head == "f_lrp" && args.empty()) return make_f_lrp();
  if (head == "smooth_abs" && args.empty()) return make_smooth_abs();
  if (head == "cubic_ramp" && args.empty()) return make_cubic_ramp();
  if (head == "f_eps") return make_f_eps(number(args, label));
  if (head == "plateau") {
    auto v = numbers(args, label);
    if (v.size() != 2) bad(label, "plateau takes eps,eta");
    return make_plateau(v[0], v[1]);
  }
  if (head == "quadratic") {
    auto at = args.find('@');
    auto lam = numbers(args.substr(0, at), label);
    std::vector<double> c(lam.size(), 0.0);
    if (at != std::string::npos) c = numbers(args.substr(at + 1), label);
    if (c.size() != lam.size()) bad(label, "center dimension mismatch");
    return make_quadratic(to_vec(lam), to_vec(c));
  }
  if (head == "box" || head == "segment") {
    auto v = numbers(args, label);
    if (v.empty() || v.size() % 2) bad(label, "need one lo,hi pair per axis");
    Vec a(static_cast<Eigen::Index>(v.size() / 2)), b(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a[i] = v[static_cast<std::size_t>(2 * i)];
      b[i] = v[static_cast<std::size_t>(2 * i + 1)];
    }
    return make_sqdist(head == "box" ? MinimizerSet::box(a, b) : MinimizerSet::segment(a, b));
  }
  if (head == "logistic" || head == "logistic_sq") {
    auto kv = keyvals(args, label);
    std::uint64_t seed = 42;
    int d = 3, m = 200;
    for (const auto& [k, v] : kv) {
      if (k == "seed") seed = static_cast<std::uint64_t>(number(v, label));
      else if (k == "d") d = static_cast<int>(number(v, label));
      else if (k == "m") m = static_cast<int>(number(v, label));
      else bad(label, "unknown key '" + k + "'");
    }
    std::string canon = "logistic:seed=" + std::to_string(seed) + ",d=" + std::to_string(d) +
                        ",m=" + std::to_string(m);
    auto f = make_logistic(LogisticDataset::synthetic(seed, d, m), canon);
    if (head == "logistic") return f;
    return compose(
        f, [](double t) { return t * t; }, [](double t) { return 2.0 * t; }, "logistic_sq" + canon.substr(8));
  }
  bad(label, "unknown objective");
}

}  // namespace

Objective parse_objective(const std::string& label) {
  auto plus = split_point(label, '+');
  if (plus == std::string::npos) return parse_base(label);
  Objective f = parse_base(label.substr(0, plus));
  return perturb(f, parse_perturbation(label.substr(plus + 1), f.minimizers()));
}

Perturbation parse_perturbation(const std::string& label, const MinimizerSet& anchor) {
  auto star = label.find('*');
  if (star != std::string::npos && star > 0 && label.rfind("diff:", 0) != 0) {
    double c = number(label.substr(0, star), label);
    return parse_perturbation(label.substr(star + 1), anchor).scaled(c);
  }
  if (label.rfind("omega_eps:", 0) == 0) {
    if (anchor.shape() != MinimizerSet::Shape::point) bad(label, "omega_eps needs a point anchor");
    Vec u = Vec::Zero(anchor.dimension());
    u[0] = 1.0;
    return make_omega_eps(number(label.substr(10), label), u, anchor.first());
  }
  if (label.rfind("diff:", 0) == 0) {
    std::string rest = label.substr(5);
    auto minus = split_point(rest, '-');
    if (minus == std::string::npos) bad(label, "diff needs <objective>-<objective>");
    Objective g = parse_objective(rest.substr(0, minus));
    Objective f = parse_objective(rest.substr(minus + 1));
    return diff_as_perturbation(f, g);
  }
  Objective h = parse_base(label);
  if (!(h.minimizers() == anchor)) throw Error(ErrorCode::incompatible_perturbation, label + ": anchor differs");
  return as_perturbation(h);
}

}  // namespace condnum
