// Feedback control laws {U, Delta}: a strategy sampled on a partition of
// [t, T] produces a piecewise-constant closed-loop control. Includes the
// extremal-shift strategy built from coinvariant gradients.
#pragma once

#include <functional>
#include <vector>

#include "fracopt/hjb.hpp"

namespace fracopt {

// Deterministic feedback: measured position -> control point of P.
using Strategy = std::function<Vec(const Position&)>;

// Sampling instants of a control law, as node indices; first node is the
// start time, last node is N.
class Partition {
public:
    Partition(const Grid& grid, std::vector<int> nodes);

    const std::vector<int>& nodes() const { return nodes_; }
    int segments() const { return static_cast<int>(nodes_.size()) - 1; }
    double diameter() const;  // max sampling gap in time units
    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    std::vector<int> nodes_;
};

// k as-equal-as-possible segments covering [tau_{t_index}, T].
Partition uniform_partition(const Grid& grid, int t_index, int segments);

struct RolloutResult {
    ControlSignal control;  // the realized piecewise-constant control
    Motion motion;
    double cost;
};

// Closed-loop execution: at every partition node the history is measured,
// the strategy is evaluated there, and the value is held constant until the
// next node. Strategy outputs must be members of the problem's control set.
RolloutResult rollout(const Problem& problem, const Position& start, const Strategy& strategy,
                      const Partition& partition);

// Extremal shift in the direction of the ci-gradient of phi:
//   (t, w) -> argmin over P of <grad_alpha phi(t,w), f(t, w(t), u)> + chi(t, w(t), u),
// first-found tie-break. Falls back to the numeric gradient estimator (with
// the module-default horizon) when phi lacks an analytic gradient.
Strategy extremal_strategy(const Problem& problem, const CiFunctional& phi);

struct ConvergenceRow {
    int segments;
    double diameter;
    double cost;
};

// Rollout costs of the extremal strategy of phi over a list of uniform
// partition sizes.
std::vector<ConvergenceRow> convergence_study(const Problem& problem, const Position& start,
                                              const CiFunctional& phi,
                                              const std::vector<int>& partition_sizes);

}  // namespace fracopt
