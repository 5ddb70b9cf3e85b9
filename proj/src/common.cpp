#include "condnum/common.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>

namespace condnum {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_objective: return "invalid-objective";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::degenerate_dataset: return "degenerate-dataset";
    case ErrorCode::excluded_point: return "excluded-point";
    case ErrorCode::estimation: return "estimation";
    case ErrorCode::incompatible_perturbation: return "incompatible-perturbation";
    case ErrorCode::invalid_perturbation: return "invalid-perturbation";
    case ErrorCode::perturbation_changes_minimizers: return "perturbation-changes-minimizers";
    case ErrorCode::kind_mismatch: return "kind-mismatch";
    case ErrorCode::conversion_domain: return "conversion-domain";
    case ErrorCode::no_guarantee: return "no-guarantee";
    case ErrorCode::bad_label: return "bad-label";
    case ErrorCode::bad_config: return "bad-config";
  }
  return "error";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  int start = 1;
  if (std::abs(v) >= 1.0) start = std::min(17, static_cast<int>(std::floor(std::log10(std::abs(v)))) + 1);
  for (int prec = start; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace condnum
