#include "fracopt/value.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracopt {

double cost_J(const Problem& problem, const Position& start, const ControlSignal& control) {
    const int end = problem.grid.steps();
    if (!control.covers(start.t_index(), end))
        throw std::invalid_argument("cost_J: control does not cover [t, T)");
    const Motion motion = solve_motion(problem, start, control, end);
    const double h = problem.grid.step();
    double running = 0.0;
    for (int j = start.t_index(); j < end; ++j)
        running += problem.chi(problem.grid.node(j), motion.sample(j), control.value_at_cell(j)) * h;
    return problem.sigma(motion.sample(end)) + running;
}

std::vector<int> uniform_switch_nodes(const Grid& grid, int t_index, int segments,
                                      int end_index) {
    if (t_index < 0 || end_index > grid.steps())
        throw std::invalid_argument("uniform_switch_nodes: range outside the grid");
    if (segments < 1 || segments > end_index - t_index)
        throw std::invalid_argument("uniform_switch_nodes: segment count outside [1, end - t]");
    std::vector<int> nodes(static_cast<std::size_t>(segments));
    for (int i = 0; i < segments; ++i) {
        const double frac = static_cast<double>(i) / segments;
        nodes[static_cast<std::size_t>(i)] =
            t_index + static_cast<int>(std::lround(frac * (end_index - t_index)));
    }
    return nodes;
}

namespace {

void validate_switch_nodes(const std::vector<int>& nodes, int t_index, int end_index) {
    if (nodes.empty()) throw std::invalid_argument("switch nodes: empty");
    if (nodes.front() != t_index)
        throw std::invalid_argument("switch nodes: first node must equal the start index");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i] <= nodes[i - 1])
            throw std::invalid_argument("switch nodes: indices must strictly increase");
    if (nodes.back() >= end_index)
        throw std::invalid_argument("switch nodes: last node must precede the end index");
}

void check_budget(int control_count, std::size_t segments, long long budget) {
    if (control_count < 1) throw std::invalid_argument("enumeration: empty control set");
    const double log_count =
        static_cast<double>(segments) * std::log(static_cast<double>(control_count));
    if (log_count > std::log(static_cast<double>(budget)) + 1e-9)
        throw std::runtime_error("enumeration budget exceeded: |P|^" + std::to_string(segments) +
                                 " > " + std::to_string(budget));
}

// Depth-first enumeration over per-segment control choices, extending the
// motion segment by segment (shared prefixes are solved once). Visits
// tuples in lexicographic control-set order; `terminal` scores a leaf from
// the reached position and the accumulated running cost.
struct SegmentEnumerator {
    SegmentEnumerator(const Problem& p, const std::vector<int>& n, int end,
                      std::function<double(const Position&, double)> score, EnumerationSink s)
        : problem(p), nodes(n), end_index(end), terminal(std::move(score)), sink(std::move(s)) {}

    const Problem& problem;
    const std::vector<int>& nodes;  // segment starts, plus implied end
    int end_index;
    std::function<double(const Position&, double)> terminal;
    EnumerationSink sink;

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_tuple;
    std::vector<int> tuple;

    void run(const Position& start) {
        tuple.assign(nodes.size(), 0);
        descend(0, start, 0.0);
    }

    void descend(std::size_t depth, const Position& pos, double running) {
        if (depth == nodes.size()) {
            const double score = terminal(pos, running);
            if (sink) sink(tuple, score);
            if (score < best) {
                best = score;
                best_tuple = tuple;
            }
            return;
        }
        const int a = nodes[depth];
        const int b = depth + 1 < nodes.size() ? nodes[depth + 1] : end_index;
        const double h = problem.grid.step();
        for (int c = 0; c < problem.control_count(); ++c) {
            tuple[depth] = c;
            const ControlSignal seg = ControlSignal::constant(problem.grid, a, b, problem.control(c));
            const Motion m = solve_motion(problem, pos, seg, b);
            double r = running;
            for (int j = a; j < b; ++j)
                r += problem.chi(problem.grid.node(j), m.sample(j), problem.control(c)) * h;
            descend(depth + 1, m.position_at(b), r);
        }
    }
};

}  // namespace

ValueEstimate value_bruteforce(const Problem& problem, const Position& start,
                               const std::vector<int>& switch_nodes,
                               long long enumeration_budget, const EnumerationSink& sink) {
    const int end = problem.grid.steps();
    validate_switch_nodes(switch_nodes, start.t_index(), end);
    check_budget(problem.control_count(), switch_nodes.size(), enumeration_budget);

    SegmentEnumerator enumerator{
        problem, switch_nodes, end,
        [&problem](const Position& pos, double running) {
            return problem.sigma(pos.state()) + running;
        },
        sink};
    enumerator.run(start);

    // Expand the winning tuple into a per-cell control signal.
    std::vector<Vec> values;
    values.reserve(static_cast<std::size_t>(end - start.t_index()));
    for (std::size_t d = 0; d < switch_nodes.size(); ++d) {
        const int b = d + 1 < switch_nodes.size() ? switch_nodes[d + 1] : end;
        for (int j = switch_nodes[d]; j < b; ++j)
            values.push_back(problem.control(enumerator.best_tuple[d]));
    }

    long long count = 1;
    for (std::size_t d = 0; d < switch_nodes.size(); ++d) count *= problem.control_count();

    return ValueEstimate{enumerator.best,
                         ControlSignal(problem.grid, start.t_index(), std::move(values)), count,
                         switch_nodes};
}

double dpp_residual(const Problem& problem, const Position& start, int theta_index,
                    const CiFunctional& value_fn, const std::vector<int>& switch_nodes,
                    long long enumeration_budget) {
    if (theta_index < start.t_index() || theta_index > problem.grid.steps())
        throw std::invalid_argument("dpp_residual: theta outside [t, T]");
    if (theta_index == start.t_index()) return 0.0;

    validate_switch_nodes(switch_nodes, start.t_index(), theta_index);
    check_budget(problem.control_count(), switch_nodes.size(), enumeration_budget);

    SegmentEnumerator enumerator{
        problem, switch_nodes, theta_index,
        [&value_fn](const Position& pos, double running) { return value_fn.value(pos) + running; },
        nullptr};
    enumerator.run(start);

    return std::fabs(value_fn.value(start) - enumerator.best);
}

}  // namespace fracopt
