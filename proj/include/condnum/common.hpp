#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace condnum {

using Vec = Eigen::VectorXd;

enum class ErrorCode {
  invalid_objective,
  invalid_parameter,
  degenerate_dataset,
  excluded_point,
  estimation,
  incompatible_perturbation,
  invalid_perturbation,
  perturbation_changes_minimizers,
  kind_mismatch,
  conversion_domain,
  no_guarantee,
  bad_label,
  bad_config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Shortest decimal form that round-trips.
std::string format_double(double v);

inline Vec vec1(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}

}  // namespace condnum
