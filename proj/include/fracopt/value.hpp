// Cost evaluation and the brute-force value oracle: exact minimization of
// the Bolza cost over piecewise-constant controls switching at declared
// nodes, plus the dynamic-programming-principle residual check.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracopt/hjb.hpp"

namespace fracopt {

// sigma(x(T)) + sum over cells of chi(tau_j, x(tau_j), u_j) * h, with the
// motion solved to the final node (left-rectangle running cost).
double cost_J(const Problem& problem, const Position& start, const ControlSignal& control);

struct ValueEstimate {
    double value;
    ControlSignal argmin;
    long long enumeration_count;
    std::vector<int> switch_nodes;
};

// Called once per enumerated control tuple (control-set indices per
// segment, final cost); lets the CLI stream enumeration reports.
using EnumerationSink = std::function<void(const std::vector<int>&, double)>;

// k as-equal-as-possible switch nodes over [tau_{t_index}, tau_{end_index});
// the returned nodes are the segment start indices.
std::vector<int> uniform_switch_nodes(const Grid& grid, int t_index, int segments,
                                      int end_index);

// Exact minimum of cost_J over all controls that are constant on each
// segment [s_i, s_{i+1}) (s_k = N implied), values drawn from the control
// set. Enumeration is lexicographic over control-set indices with
// first-found tie-break. Throws when |P|^k exceeds the budget.
ValueEstimate value_bruteforce(const Problem& problem, const Position& start,
                               const std::vector<int>& switch_nodes,
                               long long enumeration_budget = 10'000'000,
                               const EnumerationSink& sink = nullptr);

// | phi(t, w)  -  min over the enumerated controls on [t, theta] of
//   [ phi(theta, x_theta(.)) + running cost ] |,
// the discrete residual of the dynamic programming principle. By
// convention the residual is 0 when theta == t.
double dpp_residual(const Problem& problem, const Position& start, int theta_index,
                    const CiFunctional& value_fn, const std::vector<int>& switch_nodes,
                    long long enumeration_budget = 10'000'000);

}  // namespace fracopt
