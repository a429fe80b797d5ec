#include "fracopt/problems.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

#include "fracopt/special.hpp"

namespace fracopt {

namespace {

Vec scalar(double v) {
    Vec x(1);
    x[0] = v;
    return x;
}

void require_scalar(const Position& pos, const char* who) {
    if (pos.dim() != 1)
        throw std::invalid_argument(std::string(who) + ": scalar positions only");
}

}  // namespace

Problem example_problem(double alpha, double time_horizon, int steps) {
    Grid grid(time_horizon, steps, alpha);
    const double gain = gamma_fn(alpha + 1.0);
    return Problem{
        .state_dim = 1,
        .grid = grid,
        .control_set = {scalar(-1.0), scalar(0.0), scalar(1.0)},
        .f = [gain](double, const Vec&, const Vec& u) { return Vec(gain * u); },
        .sigma = [](const Vec& x) { return x.squaredNorm(); },
        .chi = [](double, const Vec&, const Vec&) { return 0.0; },
        .c_f = gain,
        .lambda_f = 0.0,
    };
}

double example_initial_state(double alpha) { return std::pow(2.0, alpha - 1.0) + 1.0; }

double example_closed_form_value(double alpha) {
    const double d = 1.0 - std::pow(2.0, alpha - 1.0);
    return d * d;
}

double val_star(const Position& pos) {
    require_scalar(pos, "val_star");
    if (pos.t_index() == 0) return pos.initial_state()[0];
    const SampledSignal psi = pos.derivative_signal();
    return pos.initial_state()[0] + rl_integral(psi, pos.grid().steps())[0];
}

CiFunctional example_value_functional(const Problem& problem) {
    if (problem.state_dim != 1)
        throw std::invalid_argument("example_value_functional: scalar problems only");
    const double T = problem.grid.time_horizon();
    const double alpha = problem.grid.order();
    const double gamma_a = gamma_fn(alpha);

    // Signed distance of val_star to the band [-(T-t)^a, (T-t)^a]:
    // negative inside, (V -/+ band) outside.
    auto band_excess = [T, alpha](const Position& pos) {
        const double band = std::pow(T - pos.time(), alpha);
        const double v = val_star(pos);
        if (v > band) return v - band;
        if (v < -band) return v + band;
        return 0.0;
    };

    CiFunctional phi;
    phi.ci_smooth = true;
    phi.value = [band_excess](const Position& pos) {
        const double e = band_excess(pos);
        return e * e;
    };
    phi.dt_alpha = [band_excess, T, alpha](const Position& pos) {
        if (!pos.interior())
            throw std::domain_error("example_value_functional: dt_alpha needs t < T");
        // the band shrinks at rate a(T-t)^{a-1}, pushing phi up on both
        // outer branches: the sign of the excess cancels against the branch
        const double e = band_excess(pos);
        return 2.0 * alpha * std::fabs(e) / std::pow(T - pos.time(), 1.0 - alpha);
    };
    phi.grad_alpha = [band_excess, T, alpha, gamma_a](const Position& pos) {
        if (!pos.interior())
            throw std::domain_error("example_value_functional: grad_alpha needs t < T");
        const double e = band_excess(pos);
        return Vec(scalar(2.0 * e / (gamma_a * std::pow(T - pos.time(), 1.0 - alpha))));
    };
    return phi;
}

Strategy example_optimal_strategy(const Problem& problem) {
    if (problem.state_dim != 1)
        throw std::invalid_argument("example_optimal_strategy: scalar problems only");
    const double T = problem.grid.time_horizon();
    const double alpha = problem.grid.order();
    return [T, alpha](const Position& pos) {
        const double band = std::pow(T - pos.time(), alpha);
        const double v = val_star(pos);
        if (v < -band) return scalar(1.0);
        if (v > band) return scalar(-1.0);
        return scalar(0.0);
    };
}

std::vector<std::string> catalog_names() { return {"paper-example", "zero-dynamics", "zero-cost"}; }

Problem make_catalog_problem(const std::string& name, double alpha, double time_horizon,
                             int steps) {
    if (name == "paper-example") return example_problem(alpha, time_horizon, steps);
    if (name == "zero-dynamics") {
        Problem p = example_problem(alpha, time_horizon, steps);
        p.f = [](double, const Vec&, const Vec&) { return Vec(Vec::Zero(1)); };
        p.c_f = 1.0;
        return p;
    }
    if (name == "zero-cost") {
        Problem p = example_problem(alpha, time_horizon, steps);
        p.sigma = [](const Vec&) { return 0.0; };
        return p;
    }
    throw std::invalid_argument("unknown catalog problem '" + name + "'");
}

Vec catalog_default_initial_state(const std::string& name, double alpha) {
    if (name == "zero-dynamics") return scalar(0.0);
    return scalar(example_initial_state(alpha));
}

Problem random_linear_problem(const Grid& grid, int state_dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> norm_dist(0.05, 0.7);
    std::uniform_int_distribution<int> n_controls(1, 4);

    Eigen::MatrixXd M(state_dim, state_dim);
    for (int i = 0; i < state_dim; ++i)
        for (int j = 0; j < state_dim; ++j) M(i, j) = unit(rng);
    const double raw_norm = M.jacobiSvd().singularValues()(0);
    const double target_norm = norm_dist(rng);
    if (raw_norm > 0.0) M *= target_norm / raw_norm;

    std::vector<Vec> controls;
    double u_max = 0.0;
    const int k = n_controls(rng);
    for (int c = 0; c < k; ++c) {
        Vec u(state_dim);
        for (int i = 0; i < state_dim; ++i) u[i] = unit(rng);
        u_max = std::max(u_max, u.norm());
        controls.push_back(std::move(u));
    }

    return Problem{
        .state_dim = state_dim,
        .grid = grid,
        .control_set = std::move(controls),
        .f = [M](double, const Vec& x, const Vec& u) { return Vec(u + M * x); },
        .sigma = [](const Vec& x) { return x.squaredNorm(); },
        .chi = [](double, const Vec&, const Vec&) { return 0.0; },
        .c_f = std::max(u_max, target_norm),
        .lambda_f = target_norm,
    };
}

}  // namespace fracopt
