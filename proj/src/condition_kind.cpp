#include "condnum/condition_kind.hpp"

#include "condnum/common.hpp"

#include <cmath>

namespace condnum {

std::array<ConditionKind, 12> all_kinds() {
  std::array<ConditionKind, 12> out{};
  std::size_t i = 0;
  for (Side s : {Side::upper, Side::lower})
    for (Family f : kFamilies) out[i++] = {f, s};
  return out;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::SC: return "SC";
    case Family::StarSC: return "*SC";
    case Family::RSI: return "RSI";
    case Family::EB: return "EB";
    case Family::PL: return "PL";
    case Family::QG: return "QG";
  }
  return "?";
}

std::string to_string(ConditionKind k) {
  return to_string(k.family) + (k.side == Side::upper ? "+" : "-");
}

ConditionKind parse_kind(const std::string& s) {
  for (auto k : all_kinds())
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::bad_label, "unknown condition kind '" + s + "'");
}

bool allows_nonpositive(ConditionKind k) {
  return k.side == Side::lower && (k.family == Family::SC || k.family == Family::StarSC);
}

bool is_valid(const ConditionConstant& c) {
  if (!std::isfinite(c.value)) return false;
  return c.value > 0.0 || allows_nonpositive(c.kind);
}

std::string to_string(Extra e) {
  switch (e) {
    case Extra::none: return "none";
    case Extra::star_convex: return "star-convex";
    case Extra::convex: return "convex";
  }
  return "?";
}

bool satisfies(Extra have, Extra need) {
  if (need == Extra::none) return true;
  if (need == Extra::star_convex) return have != Extra::none;
  return have == Extra::convex;
}

}  // namespace condnum
