// Built-in problem catalog. The primary fixture is the scalar bang-bang
// problem with dynamics Gamma(alpha+1)*u, terminal cost x(T)^2 and no
// running cost, whose value functional and optimal feedback are known in
// closed form; alongside it live degenerate calibration problems and a
// family of random linear systems with known growth/Lipschitz constants.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "fracopt/strategy.hpp"

namespace fracopt {

// Scalar problem: f = Gamma(alpha+1) * u, sigma(x) = x^2, chi = 0,
// control set {-1, 0, +1}; c_f = Gamma(alpha+1), lambda_f = 0.
Problem example_problem(double alpha, double time_horizon, int steps);

// The initial state 2^{alpha-1} + 1 from which the optimal open-loop cost
// of the example problem on [0, 2] is (1 - 2^{alpha-1})^2.
double example_initial_state(double alpha);
double example_closed_form_value(double alpha);

// Terminal-state predictor: w(0) plus the history term of the Caputo
// derivative integrated against the kernel with upper limit T. Equals the
// terminal state of the zero-control continuation. Scalar positions only.
double val_star(const Position& pos);

// The closed-form value functional of the example problem: the square of
// val_star clipped by the band (T - t)^alpha, with analytic coinvariant
// derivatives (zero inside the band, zero at the branch boundaries).
CiFunctional example_value_functional(const Problem& problem);

// The closed-form optimal feedback: +1 below the band, -1 above it, 0
// inside it (any admissible value is optimal there; 0 is the deterministic
// selection).
Strategy example_optimal_strategy(const Problem& problem);

// Catalog access for config-driven runs. Names: "paper-example",
// "zero-dynamics" (f == 0), "zero-cost" (sigma == chi == 0).
std::vector<std::string> catalog_names();
Problem make_catalog_problem(const std::string& name, double alpha, double time_horizon,
                             int steps);
// Default initial state of a catalog problem (example_initial_state for
// "paper-example" and "zero-cost", 0 for "zero-dynamics").
Vec catalog_default_initial_state(const std::string& name, double alpha);

// Random linear system f(tau, x, u) = u + M x with exactly known constants
// c_f = max(max_u |u|, |M|_2) and lambda_f = |M|_2; sigma = |x|^2, chi = 0.
// Used by the motion-bounds verification suites.
Problem random_linear_problem(const Grid& grid, int state_dim, std::mt19937_64& rng);

}  // namespace fracopt
