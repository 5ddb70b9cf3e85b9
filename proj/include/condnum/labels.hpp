#pragma once

#include "condnum/objective.hpp"
#include "condnum/starnorm.hpp"

#include <string>

namespace condnum {

// Objective labels: "f_lrp", "f_eps:0.1", "quadratic:1,10", "quadratic:3@5",
// "plateau:0.5,1", "smooth_abs", "cubic_ramp", "box:lo,hi[,lo,hi...]",
// "segment:a1,b1[,a2,b2...]", "logistic:seed=42,d=3,m=200",
// "logistic_sq:..." (f^2), and "<objective>+<perturbation>".
Objective parse_objective(const std::string& label);

// Perturbation labels: "omega_eps:0.1", "smooth_abs", "cubic_ramp",
// "diff:<objective>-<objective>", "<c>*<perturbation>". omega_eps uses the
// first coordinate direction and is centered on the anchor point.
Perturbation parse_perturbation(const std::string& label, const MinimizerSet& anchor);

}  // namespace condnum
