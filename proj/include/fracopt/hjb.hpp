// Fractional coinvariant derivatives, the Hamiltonian, residuals of the
// Hamilton-Jacobi-Bellman equation, and the Hausdorff metric on positions.
#pragma once

#include <functional>
#include <vector>

#include "fracopt/dynamics.hpp"

namespace fracopt {

// A functional phi(t, w(.)) on positions, optionally with analytic
// coinvariant derivatives of order alpha: the time derivative dt_alpha and
// the gradient grad_alpha. When both derivative maps are present the
// functional is treated as analytically differentiable; hjb_residual and
// extremal strategies fall back to the numeric estimator otherwise.
struct CiFunctional {
    std::function<double(const Position&)> value;
    std::function<double(const Position&)> dt_alpha;     // may be empty
    std::function<Vec(const Position&)> grad_alpha;      // may be empty
    bool ci_smooth = false;                              // claim, exercised by tests

    bool has_analytic() const { return static_cast<bool>(dt_alpha) && static_cast<bool>(grad_alpha); }
};

struct HamiltonianResult {
    double value;
    int argmin_index;
    Vec argmin;
};

// min over the control set of <s, f(tau, x, u)> + chi(tau, x, u);
// ties broken by the first control in set order.
HamiltonianResult hamiltonian(const Problem& problem, double tau, const Vec& x, const Vec& s);

struct CiDerivativeEstimate {
    double dt_alpha = 0.0;
    Vec grad_alpha;
    std::vector<int> horizons;            // node counts used (m, 2m)
    std::vector<double> two_horizon_gaps; // |D_m - D_2m| per probe, the error proxy

    double max_two_horizon_gap() const;
};

// Estimates the coinvariant derivatives of phi at pos by probing with
// extensions of constant Caputo derivative l in {0, +/- probe_scale * e_i}
// over horizons m*h and 2m*h, Richardson-extrapolated under a first-order
// error model. Requires pos.t_index() + 2m <= N.
CiDerivativeEstimate ci_derivative_estimate(const std::function<double(const Position&)>& phi,
                                            const Position& pos, int horizon_nodes,
                                            double probe_scale);

// Module default probe horizon: max(2, N/100) nodes.
int default_probe_horizon(const Grid& grid);

// dt_alpha(phi) + H(t, w(t), grad_alpha(phi)) at pos; analytic derivatives
// when the functional carries them, numeric estimation otherwise.
double hjb_residual(const Problem& problem, const CiFunctional& phi, const Position& pos);

// Discrete symmetric Hausdorff distance between the node-sampled graphs
// {(tau_i, w(tau_i))}. Positions must share a grid; t-indices may differ.
double dist(const Position& a, const Position& b);

// Max over the motion's cells of
//   | (omega_{j+1} - omega_j)/h  -  [dt_alpha phi + <grad_alpha phi, psi_j>] |
// with omega_j = phi(tau_j, x_{tau_j}); the discrete total-derivative test.
// phi must carry analytic derivatives.
double total_derivative_check(const CiFunctional& phi, const Motion& motion);

}  // namespace fracopt
