#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>

namespace condnum {

enum class Family { SC, StarSC, RSI, EB, PL, QG };
enum class Side { upper, lower };

struct ConditionKind {
  Family family;
  Side side;

  auto operator<=>(const ConditionKind&) const = default;
  bool is_lower() const { return side == Side::lower; }
};

inline constexpr std::array<Family, 6> kFamilies = {Family::SC, Family::StarSC, Family::RSI,
                                                    Family::EB, Family::PL,     Family::QG};

// All 12 kinds, upper side first.
std::array<ConditionKind, 12> all_kinds();

std::string to_string(Family f);
std::string to_string(ConditionKind k);  // "SC+", "*SC-", ...
ConditionKind parse_kind(const std::string& s);

struct ConditionConstant {
  ConditionKind kind;
  double value;
};

// Kinds whose lower constant may be <= 0 (extended convexity).
bool allows_nonpositive(ConditionKind k);
// Checks the sign constraints on a constant; false if not a valid membership claim.
bool is_valid(const ConditionConstant& c);

using ConstantTable = std::map<ConditionKind, double>;

// Side assumptions beyond the condition pair: convexity implies star-convexity.
enum class Extra { none, star_convex, convex };
std::string to_string(Extra e);
bool satisfies(Extra have, Extra need);

}  // namespace condnum
