#include "fracopt/dynamics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "fracopt/special.hpp"

namespace fracopt {

AssumptionReport spot_check_assumptions(const Problem& problem, double radius, int trials,
                                        unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> time_dist(0.0, problem.grid.time_horizon());
    std::uniform_int_distribution<int> ctrl(0, problem.control_count() - 1);

    auto random_state = [&] {
        Vec x(problem.state_dim);
        for (int i = 0; i < problem.state_dim; ++i) x[i] = radius * unit(rng);
        return x;
    };

    AssumptionReport report;
    for (int k = 0; k < trials; ++k) {
        const double tau = time_dist(rng);
        const Vec x = random_state();
        const Vec xp = random_state();
        const Vec& u = problem.control(ctrl(rng));

        const Vec fx = problem.f(tau, x, u);
        report.worst_growth_ratio =
            std::max(report.worst_growth_ratio, fx.norm() / ((1.0 + x.norm()) * problem.c_f));

        const double dx = (x - xp).norm();
        if (dx > 1e-12) {
            const double df = (fx - problem.f(tau, xp, u)).norm();
            const double ratio = (df <= 1e-15) ? 0.0 : df / (problem.lambda_f * dx);
            report.worst_lipschitz_ratio = std::max(report.worst_lipschitz_ratio, ratio);
        }
    }
    return report;
}

Position::Position(Grid grid, std::vector<Vec> samples, std::vector<Vec> psi)
    : grid_(grid), samples_(std::move(samples)), psi_(std::move(psi)) {
    if (samples_.empty())
        throw std::invalid_argument("Position: history needs at least the initial sample");
    if (static_cast<int>(samples_.size()) - 1 > grid_.steps())
        throw std::invalid_argument("Position: history extends past the grid");
    if (psi_.size() + 1 != samples_.size())
        throw std::invalid_argument("Position: derivative cells must match history cells");
    for (const Vec& v : samples_)
        if (!v.allFinite()) throw std::invalid_argument("Position: non-finite history sample");
}

Position::Position(const Grid& grid, std::vector<Vec> node_samples)
    : Position(grid, node_samples,
               node_samples.size() > 1 ? caputo_reconstruct(grid, node_samples).cells
                                       : std::vector<Vec>{}) {}

Position Position::from_derivative(const Grid& grid, const Vec& w0, const SampledSignal& psi) {
    if (psi.grid != grid)
        throw std::invalid_argument("Position: derivative signal lives on a different grid");
    std::vector<Vec> samples;
    samples.reserve(psi.cells.size() + 1);
    samples.push_back(w0);
    for (int i = 1; i <= psi.covered_cells(); ++i) samples.push_back(w0 + rl_integral(psi, i));
    return Position(grid, std::move(samples), psi.cells);
}

Position Position::from_parts(const Grid& grid, std::vector<Vec> samples,
                              std::vector<Vec> psi_cells) {
    return Position(grid, std::move(samples), std::move(psi_cells));
}

SampledSignal Position::derivative_signal() const { return SampledSignal(grid_, psi_); }

double Position::sup_norm() const {
    double m = 0.0;
    for (const Vec& v : samples_) m = std::max(m, v.norm());
    return m;
}

double Position::derivative_sup_norm() const {
    double m = 0.0;
    for (const Vec& v : psi_) m = std::max(m, v.norm());
    return m;
}

double Position::reconstruction_error() const {
    if (t_index() == 0) return 0.0;
    const SampledSignal sig = derivative_signal();
    double worst = 0.0;
    for (int i = 1; i <= t_index(); ++i)
        worst = std::max(worst, (sample(i) - initial_state() - rl_integral(sig, i)).norm());
    return worst;
}

Position make_initial_position(const Grid& grid, const Vec& w0) {
    return Position::from_parts(grid, {w0}, {});
}

Position make_constant_position(const Grid& grid, const Vec& c, int t_index) {
    if (t_index < 0 || t_index > grid.steps())
        throw std::invalid_argument("make_constant_position: node index outside the grid");
    std::vector<Vec> samples(static_cast<std::size_t>(t_index) + 1, c);
    std::vector<Vec> psi(static_cast<std::size_t>(t_index), Vec::Zero(c.size()));
    return Position::from_parts(grid, std::move(samples), std::move(psi));
}

ControlSignal::ControlSignal(const Grid& grid, int start_index, std::vector<Vec> values)
    : grid_(grid), start_(start_index), values_(std::move(values)) {
    if (start_ < 0 || end_index() > grid_.steps())
        throw std::invalid_argument("ControlSignal: cells outside the grid");
}

ControlSignal ControlSignal::constant(const Grid& grid, int start_index, int end_index,
                                      const Vec& u) {
    if (end_index < start_index)
        throw std::invalid_argument("ControlSignal: end before start");
    return ControlSignal(grid, start_index,
                         std::vector<Vec>(static_cast<std::size_t>(end_index - start_index), u));
}

const Vec& ControlSignal::value_at_cell(int j) const {
    if (j < start_ || j >= end_index())
        throw std::out_of_range("ControlSignal: cell " + std::to_string(j) +
                                " outside [" + std::to_string(start_) + ", " +
                                std::to_string(end_index()) + ")");
    return values_[static_cast<std::size_t>(j - start_)];
}

bool ControlSignal::admissible_for(const Problem& problem) const {
    for (const Vec& v : values_) {
        bool found = false;
        for (const Vec& p : problem.control_set)
            if (v.size() == p.size() && v == p) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

Motion::Motion(Grid grid, int start_index, std::vector<Vec> samples, std::vector<Vec> psi,
               ControlSignal control, SolverDiagnostics diag)
    : grid_(grid),
      start_(start_index),
      samples_(std::move(samples)),
      psi_(std::move(psi)),
      control_(std::move(control)),
      diag_(diag) {}

Position Motion::position_at(int node_index) const {
    if (node_index < 0 || node_index > end_index())
        throw std::out_of_range("Motion: restriction node outside the solved range");
    std::vector<Vec> s(samples_.begin(), samples_.begin() + node_index + 1);
    std::vector<Vec> p(psi_.begin(), psi_.begin() + node_index);
    return Position::from_parts(grid_, std::move(s), std::move(p));
}

Motion solve_motion(const Problem& problem, const Position& start, const ControlSignal& control,
                    int theta_index) {
    const Grid& grid = problem.grid;
    if (start.grid() != grid || control.grid() != grid)
        throw std::invalid_argument("solve_motion: grid mismatch");
    const int t = start.t_index();
    if (theta_index < t || theta_index > grid.steps())
        throw std::invalid_argument("solve_motion: theta outside [t, T]");
    if (theta_index > t && !control.covers(t, theta_index))
        throw std::invalid_argument("solve_motion: control does not cover [t, theta)");

    constexpr double kCorrectorTol = 1e-12;
    constexpr int kCorrectorCap = 50;

    std::vector<Vec> xs = start.samples();
    std::vector<Vec> psi = start.psi();
    xs.reserve(static_cast<std::size_t>(theta_index) + 1);
    psi.reserve(static_cast<std::size_t>(theta_index));

    const Vec& w0 = start.initial_state();
    const double scale = grid.quad_scale();
    SolverDiagnostics diag;

    Vec partial(start.dim());
    for (int j = t; j < theta_index; ++j) {
        // fixed part of the quadrature at node j+1: all cells before j
        partial.setZero();
        for (int i = 0; i < j; ++i)
            partial.noalias() += grid.conv_weight(j + 1 - i) * psi[static_cast<std::size_t>(i)];
        const Vec base = w0 + scale * partial;

        const double tau_j = grid.node(j);
        const Vec& u_j = control.value_at_cell(j);

        Vec psi_cell = problem.f(tau_j, xs.back(), u_j);  // predictor
        Vec x_next = base + scale * psi_cell;
        double gap = 0.0;
        int iters = 0;
        double first_gap = -1.0;
        while (iters < kCorrectorCap) {
            ++iters;
            psi_cell = problem.f(tau_j, x_next, u_j);
            Vec candidate = base + scale * psi_cell;
            gap = (candidate - x_next).norm();
            x_next = std::move(candidate);
            if (first_gap < 0.0) first_gap = gap;
            if (gap <= kCorrectorTol) break;
        }
        if (gap > kCorrectorTol && gap > first_gap)
            throw std::runtime_error("solve_motion: corrector diverged at node " +
                                     std::to_string(j + 1));
        diag.max_corrector_iterations = std::max(diag.max_corrector_iterations, iters);
        diag.max_corrector_residual = std::max(diag.max_corrector_residual, gap);

        psi.push_back(psi_cell);
        xs.push_back(std::move(x_next));
    }

    return Motion(grid, t, std::move(xs), std::move(psi), control, diag);
}

MotionBounds motion_bounds(const Problem& problem, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("motion_bounds: radius must be positive");
    const Grid& g = problem.grid;
    const double Ta = std::pow(g.time_horizon(), g.order());
    MotionBounds b;
    b.M_x = (1.0 + 3.0 * radius) * mittag_leffler(g.order(), Ta * problem.c_f) - 1.0;
    b.H_x = holder_constant(g.order()) * std::max(radius, (1.0 + b.M_x) * problem.c_f);
    b.L_x = 3.0 * mittag_leffler(g.order(), Ta * problem.lambda_f);
    return b;
}

}  // namespace fracopt
