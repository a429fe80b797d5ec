#include "fracopt/strategy.hpp"

#include <stdexcept>
#include <string>

namespace fracopt {

Partition::Partition(const Grid& grid, std::vector<int> nodes)
    : grid_(grid), nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("Partition: needs at least one segment");
    if (nodes_.front() < 0 || nodes_.back() != grid_.steps())
        throw std::invalid_argument("Partition: must span [t, T] (last node == N)");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (nodes_[i] <= nodes_[i - 1])
            throw std::invalid_argument("Partition: nodes must strictly increase");
}

double Partition::diameter() const {
    int widest = 0;
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        widest = std::max(widest, nodes_[i] - nodes_[i - 1]);
    return widest * grid_.step();
}

Partition uniform_partition(const Grid& grid, int t_index, int segments) {
    if (segments < 1 || segments > grid.steps() - t_index)
        throw std::invalid_argument("uniform_partition: segment count outside [1, N - t]");
    std::vector<int> nodes(static_cast<std::size_t>(segments) + 1);
    for (int i = 0; i <= segments; ++i) {
        const double frac = static_cast<double>(i) / segments;
        nodes[static_cast<std::size_t>(i)] =
            t_index + static_cast<int>(std::lround(frac * (grid.steps() - t_index)));
    }
    return Partition(grid, std::move(nodes));
}

RolloutResult rollout(const Problem& problem, const Position& start, const Strategy& strategy,
                      const Partition& partition) {
    const Grid& grid = problem.grid;
    if (partition.grid() != grid) throw std::invalid_argument("rollout: partition grid mismatch");
    if (partition.nodes().front() != start.t_index())
        throw std::invalid_argument("rollout: partition must start at the position's time");

    std::vector<Vec> realized;
    realized.reserve(static_cast<std::size_t>(grid.steps() - start.t_index()));
    std::vector<Vec> xs = start.samples();
    std::vector<Vec> psi = start.psi();
    SolverDiagnostics diag;

    Position measured = start;
    const auto& nodes = partition.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const int a = nodes[i];
        const int b = nodes[i + 1];
        const Vec u = strategy(measured);
        bool member = false;
        for (const Vec& p : problem.control_set)
            if (u.size() == p.size() && u == p) {
                member = true;
                break;
            }
        if (!member)
            throw std::invalid_argument("rollout: strategy returned a point outside the control set");

        const Motion m =
            solve_motion(problem, measured, ControlSignal::constant(grid, a, b, u), b);
        for (int j = a; j < b; ++j) realized.push_back(u);
        xs.insert(xs.end(), m.samples().begin() + a + 1, m.samples().end());
        psi.insert(psi.end(), m.psi().begin() + a, m.psi().end());
        diag.max_corrector_iterations =
            std::max(diag.max_corrector_iterations, m.diagnostics().max_corrector_iterations);
        diag.max_corrector_residual =
            std::max(diag.max_corrector_residual, m.diagnostics().max_corrector_residual);
        measured = m.position_at(b);
    }

    ControlSignal control(grid, start.t_index(), std::move(realized));
    Motion motion(grid, start.t_index(), std::move(xs), std::move(psi), control, diag);

    const double h = grid.step();
    double running = 0.0;
    for (int j = start.t_index(); j < grid.steps(); ++j)
        running += problem.chi(grid.node(j), motion.sample(j), control.value_at_cell(j)) * h;
    const double cost = problem.sigma(motion.sample(grid.steps())) + running;

    return RolloutResult{std::move(control), std::move(motion), cost};
}

Strategy extremal_strategy(const Problem& problem, const CiFunctional& phi) {
    if (!phi.value)
        throw std::invalid_argument("extremal_strategy: functional has no value map");
    return [problem, phi](const Position& pos) {
        Vec gradient;
        if (phi.grad_alpha) {
            gradient = phi.grad_alpha(pos);
        } else {
            gradient = ci_derivative_estimate(phi.value, pos, default_probe_horizon(pos.grid()),
                                              1.0)
                           .grad_alpha;
        }
        return hamiltonian(problem, pos.time(), pos.state(), gradient).argmin;
    };
}

std::vector<ConvergenceRow> convergence_study(const Problem& problem, const Position& start,
                                              const CiFunctional& phi,
                                              const std::vector<int>& partition_sizes) {
    const Strategy u = extremal_strategy(problem, phi);
    std::vector<ConvergenceRow> rows;
    rows.reserve(partition_sizes.size());
    for (int k : partition_sizes) {
        const Partition partition = uniform_partition(problem.grid, start.t_index(), k);
        const RolloutResult result = rollout(problem, start, u, partition);
        rows.push_back(ConvergenceRow{k, partition.diameter(), result.cost});
    }
    return rows;
}

}  // namespace fracopt
