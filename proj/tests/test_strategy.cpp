#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracopt/problems.hpp"
#include "fracopt/strategy.hpp"
#include "fracopt/value.hpp"
#include "test_util.hpp"

using namespace fracopt;
using testutil::scalar;

TEST_CASE("partition validation and diameter") {
    const Grid g(2.0, 100, 0.5);
    CHECK_THROWS_AS(Partition(g, {0}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(g, {0, 50}), std::invalid_argument);        // must end at N
    CHECK_THROWS_AS(Partition(g, {0, 50, 50, 100}), std::invalid_argument);
    const Partition p(g, {0, 30, 100});
    CHECK(p.diameter() == doctest::Approx(70 * g.step()).epsilon(1e-14));
    CHECK(uniform_partition(g, 0, 4).nodes() == std::vector<int>{0, 25, 50, 75, 100});
}

TEST_CASE("constant strategy reproduces the open-loop control bit for bit") {
    const double alpha = 0.5;
    const Problem prob = example_problem(alpha, 2.0, 200);
    const Position start = make_initial_position(prob.grid, scalar(example_initial_state(alpha)));

    const Strategy hold = [](const Position&) { return testutil::scalar(-1.0); };
    const RolloutResult closed = rollout(prob, start, hold, uniform_partition(prob.grid, 0, 8));
    const double open = cost_J(prob, start, ControlSignal::constant(prob.grid, 0, 200, scalar(-1.0)));

    CHECK(closed.cost == open);  // identical arithmetic path
    CHECK(std::fabs(closed.cost - example_closed_form_value(alpha)) <= 1e-2);
    for (int j = 0; j < 200; ++j) CHECK(closed.control.value_at_cell(j)[0] == -1.0);
}

TEST_CASE("rollout rejects strategies that leave the control set") {
    const Problem prob = example_problem(0.5, 2.0, 50);
    const Position start = make_initial_position(prob.grid, scalar(1.0));
    const Strategy rogue = [](const Position&) { return testutil::scalar(0.37); };
    CHECK_THROWS_AS(rollout(prob, start, rogue, uniform_partition(prob.grid, 0, 5)),
                    std::invalid_argument);
}

TEST_CASE("extremal strategy follows the closed-form branches") {
    const double alpha = 0.5;
    const Problem prob = example_problem(alpha, 2.0, 200);
    const CiFunctional phi = example_value_functional(prob);
    const Strategy extremal = extremal_strategy(prob, phi);
    const Strategy closed_form = example_optimal_strategy(prob);

    // far above the band: both say -1
    const Position high = make_constant_position(prob.grid, scalar(3.0), 100);
    CHECK(extremal(high)[0] == -1.0);
    CHECK(closed_form(high)[0] == -1.0);

    // far below: both say +1
    const Position low = make_constant_position(prob.grid, scalar(-3.0), 100);
    CHECK(extremal(low)[0] == 1.0);
    CHECK(closed_form(low)[0] == 1.0);

    // inside the band the gradient vanishes: the extremal pick is the
    // first control of the set, the closed form picks the coasting 0
    const Position inside = make_constant_position(prob.grid, scalar(0.2), 100);
    CHECK(extremal(inside)[0] == -1.0);
    CHECK(closed_form(inside)[0] == 0.0);
}

TEST_CASE("all-tie argmin falls back to the first control") {
    const Problem prob = make_catalog_problem("zero-dynamics", 0.5, 2.0, 100);
    CiFunctional flat;
    flat.value = [](const Position&) { return 0.0; };
    flat.dt_alpha = [](const Position&) { return 0.0; };
    flat.grad_alpha = [](const Position& pos) { return Vec(Vec::Zero(pos.dim())); };
    const Strategy s = extremal_strategy(prob, flat);
    const Position pos = make_constant_position(prob.grid, scalar(0.5), 10);
    CHECK(s(pos) == prob.control(0));
}

TEST_CASE("feedback rollout approaches the closed-form optimum") {
    for (double alpha : {0.3, 0.5, 0.8}) {
        const Problem prob = example_problem(alpha, 2.0, 400);
        const Position start =
            make_initial_position(prob.grid, scalar(example_initial_state(alpha)));
        const CiFunctional phi = example_value_functional(prob);
        const auto rows = convergence_study(prob, start, phi, {5, 10, 20, 40});

        const double closed = example_closed_form_value(alpha);
        double prev_gap = std::numeric_limits<double>::infinity();
        for (const auto& row : rows) {
            const double gap = row.cost - closed;
            CHECK(gap >= -1e-12);               // rollouts never beat the value
            CHECK(gap <= prev_gap + 1e-3);      // refinement does not hurt
            if (row.diameter <= 0.1 + 1e-12) CHECK(gap <= 0.05);
            prev_gap = gap;
        }
    }
}

TEST_CASE("rollout cost dominates the brute-force value on nested switch nodes") {
    Problem prob = example_problem(0.5, 2.0, 48);
    prob.chi = [](double, const Vec& x, const Vec& u) {
        return 0.1 * x.squaredNorm() + 0.02 * u[0];
    };
    const Position start = make_initial_position(prob.grid, scalar(0.9));
    const std::vector<int> switches = {0, 12, 24, 36};  // superset of partition nodes
    const double value = value_bruteforce(prob, start, switches).value;

    const Partition coarse(prob.grid, {0, 24, 48});
    const CiFunctional phi = example_value_functional(prob);
    for (const Strategy& s : {extremal_strategy(prob, phi), example_optimal_strategy(prob),
                              Strategy([](const Position&) { return testutil::scalar(1.0); })}) {
        const RolloutResult r = rollout(prob, start, s, coarse);
        CHECK(r.cost >= value - 1e-12);
    }
}

TEST_CASE("rollouts are deterministic") {
    const Problem prob = example_problem(0.5, 2.0, 200);
    const Position start = make_initial_position(prob.grid, scalar(example_initial_state(0.5)));
    const CiFunctional phi = example_value_functional(prob);
    const Strategy s = extremal_strategy(prob, phi);
    const Partition p = uniform_partition(prob.grid, 0, 10);

    const RolloutResult a = rollout(prob, start, s, p);
    const RolloutResult b = rollout(prob, start, s, p);
    CHECK(a.cost == b.cost);
    for (int j = 0; j < 200; ++j)
        CHECK(a.control.value_at_cell(j) == b.control.value_at_cell(j));
    for (int j = 0; j <= 200; ++j) CHECK(a.motion.sample(j) == b.motion.sample(j));
}

TEST_CASE("convergence study on the zero-cost problem is identically zero") {
    const Problem prob = make_catalog_problem("zero-cost", 0.5, 2.0, 100);
    const Position start = make_initial_position(prob.grid, scalar(1.0));
    CiFunctional flat;
    flat.value = [](const Position&) { return 0.0; };
    flat.dt_alpha = [](const Position&) { return 0.0; };
    flat.grad_alpha = [](const Position& pos) { return Vec(Vec::Zero(pos.dim())); };
    for (const auto& row : convergence_study(prob, start, flat, {2, 5, 10})) CHECK(row.cost == 0.0);
}

TEST_CASE("a single-interval rollout freezes the strategy at the start") {
    const double alpha = 0.5;
    const Problem prob = example_problem(alpha, 2.0, 100);
    const Position start = make_initial_position(prob.grid, scalar(example_initial_state(alpha)));
    const CiFunctional phi = example_value_functional(prob);
    const Strategy s = extremal_strategy(prob, phi);

    const RolloutResult single = rollout(prob, start, s, uniform_partition(prob.grid, 0, 1));
    const Vec frozen = s(start);
    const double open = cost_J(prob, start, ControlSignal::constant(prob.grid, 0, 100, frozen));
    CHECK(single.cost == open);
}

TEST_CASE("numeric-gradient strategies work without analytic fields") {
    const double alpha = 0.5;
    const Problem prob = example_problem(alpha, 2.0, 200);
    const Position start = make_initial_position(prob.grid, scalar(example_initial_state(alpha)));
    CiFunctional numeric;
    numeric.value = example_value_functional(prob).value;

    const Strategy s = extremal_strategy(prob, numeric);
    CHECK(s(start)[0] == -1.0);  // the start lies above the band

    const RolloutResult r = rollout(prob, start, s, uniform_partition(prob.grid, 0, 5));
    CHECK(std::fabs(r.cost - example_closed_form_value(alpha)) <= 0.05);
}
