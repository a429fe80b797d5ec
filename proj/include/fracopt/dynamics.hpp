// Controlled Caputo systems: problem data, positions (a time together with
// the full history of the motion up to that time), piecewise-constant
// controls, and the motion solver for the weakly singular Volterra integral
// equation that characterizes motions started from an arbitrary position.
#pragma once

#include <functional>
#include <vector>

#include "fracopt/fraccalc.hpp"
#include "fracopt/grid.hpp"

namespace fracopt {

// Right-hand side f(tau, x, u), terminal cost sigma(x), running cost
// chi(tau, x, u).
using RhsFn = std::function<Vec(double, const Vec&, const Vec&)>;
using TerminalCostFn = std::function<double(const Vec&)>;
using RunningCostFn = std::function<double(double, const Vec&, const Vec&)>;

struct Problem {
    int state_dim = 1;
    Grid grid;
    std::vector<Vec> control_set;  // finite representation of the compact set P
    RhsFn f;
    TerminalCostFn sigma;
    RunningCostFn chi;
    double c_f = 0.0;       // sublinear-growth constant: |f| <= (1 + |x|) c_f
    double lambda_f = 0.0;  // Lipschitz constant of f in x on the ball of interest

    const Vec& control(int k) const { return control_set[static_cast<std::size_t>(k)]; }
    int control_count() const { return static_cast<int>(control_set.size()); }
};

// Random spot check of the growth and Lipschitz assumptions on f.
// Ratios <= 1 mean the declared constants hold on the sampled points.
struct AssumptionReport {
    double worst_growth_ratio = 0.0;
    double worst_lipschitz_ratio = 0.0;
};
AssumptionReport spot_check_assumptions(const Problem& problem, double radius, int trials,
                                        unsigned long long seed);

// A pair (t, w(.)): node samples of the history on [0, t] together with the
// cell samples of its Caputo derivative. Invariant (checked by
// reconstruction_error, exact for all construction paths in this library):
//   w(tau_i) = w(tau_0) + (I^alpha psi)(tau_i)  for all i <= t_index.
class Position {
public:
    // History given by node samples; the derivative is reconstructed.
    Position(const Grid& grid, std::vector<Vec> node_samples);

    // History given by its Caputo derivative; samples are integrated.
    static Position from_derivative(const Grid& grid, const Vec& w0, const SampledSignal& psi);

    // Trusted constructor: both arrays already consistent (solver internals).
    static Position from_parts(const Grid& grid, std::vector<Vec> samples,
                               std::vector<Vec> psi_cells);

    const Grid& grid() const { return grid_; }
    int t_index() const { return static_cast<int>(samples_.size()) - 1; }
    double time() const { return grid_.node(t_index()); }
    int dim() const { return static_cast<int>(samples_.front().size()); }
    bool interior() const { return t_index() < grid_.steps(); }  // membership in G^0

    const std::vector<Vec>& samples() const { return samples_; }
    const Vec& sample(int i) const { return samples_[static_cast<std::size_t>(i)]; }
    const Vec& initial_state() const { return samples_.front(); }
    const Vec& state() const { return samples_.back(); }  // w(t)

    SampledSignal derivative_signal() const;  // psi as a SampledSignal
    const std::vector<Vec>& psi() const { return psi_; }

    double sup_norm() const;             // max node norm of the history
    double derivative_sup_norm() const;  // max cell norm of psi

    // Max over nodes of |w_i - w_0 - (I^alpha psi)(tau_i)|.
    double reconstruction_error() const;

private:
    Position(Grid grid, std::vector<Vec> samples, std::vector<Vec> psi);

    Grid grid_;
    std::vector<Vec> samples_;  // nodes 0..t_index
    std::vector<Vec> psi_;      // cells 0..t_index-1
};

Position make_initial_position(const Grid& grid, const Vec& w0);

// Constant history w == c on [0, tau_{t_index}] (zero Caputo derivative).
Position make_constant_position(const Grid& grid, const Vec& c, int t_index);

// Piecewise-constant control on the cells [start_index, end_index).
class ControlSignal {
public:
    ControlSignal(const Grid& grid, int start_index, std::vector<Vec> values);

    static ControlSignal constant(const Grid& grid, int start_index, int end_index, const Vec& u);

    const Grid& grid() const { return grid_; }
    int start_index() const { return start_; }
    int end_index() const { return start_ + static_cast<int>(values_.size()); }
    const Vec& value_at_cell(int j) const;
    const std::vector<Vec>& values() const { return values_; }

    bool covers(int from, int to) const { return start_ <= from && to <= end_index(); }

    // true iff every value is a member (exact match) of the problem's control set
    bool admissible_for(const Problem& problem) const;

private:
    Grid grid_;
    int start_;
    std::vector<Vec> values_;
};

struct SolverDiagnostics {
    int max_corrector_iterations = 0;
    double max_corrector_residual = 0.0;  // last successive-iterate gap, worst cell
};

// A motion: the initial position extended to end_index under a control.
// The restriction to any node is again a Position.
class Motion {
public:
    Motion(Grid grid, int start_index, std::vector<Vec> samples, std::vector<Vec> psi,
           ControlSignal control, SolverDiagnostics diag);

    const Grid& grid() const { return grid_; }
    int start_index() const { return start_; }
    int end_index() const { return static_cast<int>(samples_.size()) - 1; }
    const std::vector<Vec>& samples() const { return samples_; }
    const Vec& sample(int i) const { return samples_[static_cast<std::size_t>(i)]; }
    const std::vector<Vec>& psi() const { return psi_; }
    const ControlSignal& control() const { return control_; }
    const SolverDiagnostics& diagnostics() const { return diag_; }

    // The pair (tau_j, history up to tau_j).
    Position position_at(int node_index) const;

private:
    Grid grid_;
    int start_;
    std::vector<Vec> samples_;
    std::vector<Vec> psi_;
    ControlSignal control_;
    SolverDiagnostics diag_;
};

// Solves the integral equation
//   x(tau) = w(0) + (I^alpha psi_history)(tau) + (1/Gamma(a)) int_t^tau f/(tau-xi)^{1-a}
// at the nodes of [t, theta]. Per cell: explicit product-rectangle predictor,
// then fixed-point corrector on x_{j+1} with f evaluated at the left node
// time, iterated until successive iterates differ by <= 1e-12 (cap 50).
// The converged f value becomes the psi cell, so the position invariant
// holds exactly on the result. theta_index == t yields the start unchanged.
Motion solve_motion(const Problem& problem, const Position& start, const ControlSignal& control,
                    int theta_index);

// Constants of the a-priori estimates for motions from histories bounded
// by R: uniform bound M_x, Hoelder constant H_x, Lipschitz-in-history L_x.
struct MotionBounds {
    double M_x;
    double H_x;
    double L_x;
};
MotionBounds motion_bounds(const Problem& problem, double radius);

}  // namespace fracopt
