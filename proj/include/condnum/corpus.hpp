#pragma once

#include "condnum/objective.hpp"
#include "condnum/piecewise.hpp"

#include <cstdint>
#include <vector>

namespace condnum {

// f(x) = 1/2 sum lambda_i (x_i - c_i)^2
Objective make_quadratic(const Vec& eigenvalues, const Vec& center);
Objective make_quadratic(const Vec& eigenvalues);

// Piecewise quadratic with f' = 25x (x<1), x+24 (1<=x<=2), 25x-24 (x>2).
Objective make_f_lrp();
PiecewisePoly f_lrp_derivative();

// x^2 for x<=1, x^2+(x-1)^2/eps on [1,1+eps^2], then linear-plus-quadratic continuation.
Objective make_f_eps(double eps);
PiecewisePoly f_eps_derivative(double eps);

// sqrt(x^2+1)-1
Objective make_smooth_abs();
// 0 for x<1, (x-1)^3 on [1,2], 3x-5 beyond.
Objective make_cubic_ramp();

// Four-branch function with a flat segment on [1+eps, 1+eps+eta].
Objective make_plateau(double eps, double eta);
PiecewisePoly plateau_derivative(double eps, double eta);

// 1/2 d(x, S)^2 for a box or segment S: convex, 1-smooth, not strongly convex.
Objective make_sqdist(const MinimizerSet& set);

}  // namespace condnum
