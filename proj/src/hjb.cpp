#include "fracopt/hjb.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracopt {

HamiltonianResult hamiltonian(const Problem& problem, double tau, const Vec& x, const Vec& s) {
    if (problem.control_count() == 0)
        throw std::invalid_argument("hamiltonian: empty control set");
    HamiltonianResult best{std::numeric_limits<double>::infinity(), -1, Vec()};
    for (int k = 0; k < problem.control_count(); ++k) {
        const Vec& u = problem.control(k);
        const double v = s.dot(problem.f(tau, x, u)) + problem.chi(tau, x, u);
        if (v < best.value) best = {v, k, u};
    }
    return best;
}

double CiDerivativeEstimate::max_two_horizon_gap() const {
    double m = 0.0;
    for (double g : two_horizon_gaps) m = std::max(m, std::fabs(g));
    return m;
}

namespace {

// Extends the history with `extra` cells of constant Caputo derivative l.
Position extend_constant_derivative(const Position& pos, const Vec& l, int extra) {
    const Grid& grid = pos.grid();
    std::vector<Vec> xs = pos.samples();
    std::vector<Vec> psi = pos.psi();
    const Vec& w0 = pos.initial_state();
    const double scale = grid.quad_scale();
    Vec partial(pos.dim());
    for (int j = pos.t_index(); j < pos.t_index() + extra; ++j) {
        psi.push_back(l);
        partial.setZero();
        for (int i = 0; i <= j; ++i)
            partial.noalias() += grid.conv_weight(j + 1 - i) * psi[static_cast<std::size_t>(i)];
        xs.push_back(w0 + scale * partial);
    }
    return Position::from_parts(grid, std::move(xs), std::move(psi));
}

}  // namespace

int default_probe_horizon(const Grid& grid) { return std::max(2, grid.steps() / 100); }

CiDerivativeEstimate ci_derivative_estimate(const std::function<double(const Position&)>& phi,
                                            const Position& pos, int horizon_nodes,
                                            double probe_scale) {
    const Grid& grid = pos.grid();
    const int m = horizon_nodes;
    if (m < 1) throw std::invalid_argument("ci_derivative_estimate: horizon must be positive");
    if (pos.t_index() + 2 * m > grid.steps())
        throw std::out_of_range("ci_derivative_estimate: probe horizon exceeds the grid");
    if (!(probe_scale > 0.0))
        throw std::invalid_argument("ci_derivative_estimate: probe scale must be positive");

    const int n = pos.dim();
    const double base = phi(pos);
    if (!std::isfinite(base))
        throw std::runtime_error("ci_derivative_estimate: functional returned a non-finite value");

    // Richardson-extrapolated directional rate for the extension with
    // constant derivative l, assuming a first-order error model.
    auto extrapolated_rate = [&](const Vec& l, double& gap) {
        const Position long_ext = extend_constant_derivative(pos, l, 2 * m);
        const Position short_ext = Position::from_parts(
            grid,
            {long_ext.samples().begin(), long_ext.samples().begin() + pos.t_index() + m + 1},
            {long_ext.psi().begin(), long_ext.psi().begin() + pos.t_index() + m});
        const double d1 = grid.step() * m;
        const double d2 = grid.step() * 2 * m;
        const double v1 = phi(short_ext);
        const double v2 = phi(long_ext);
        if (!std::isfinite(v1) || !std::isfinite(v2))
            throw std::runtime_error(
                "ci_derivative_estimate: functional returned a non-finite value on a probe");
        const double rate1 = (v1 - base) / d1;
        const double rate2 = (v2 - base) / d2;
        gap = std::fabs(rate1 - rate2);
        return 2.0 * rate1 - rate2;
    };

    CiDerivativeEstimate est;
    est.horizons = {m, 2 * m};
    est.grad_alpha = Vec::Zero(n);
    est.two_horizon_gaps.reserve(static_cast<std::size_t>(2 * n + 1));

    double gap = 0.0;
    est.dt_alpha = extrapolated_rate(Vec::Zero(n), gap);
    est.two_horizon_gaps.push_back(gap);

    for (int i = 0; i < n; ++i) {
        Vec probe = Vec::Zero(n);
        probe[i] = probe_scale;
        const double forward = extrapolated_rate(probe, gap);
        est.two_horizon_gaps.push_back(gap);
        probe[i] = -probe_scale;
        const double backward = extrapolated_rate(probe, gap);
        est.two_horizon_gaps.push_back(gap);
        est.grad_alpha[i] = (forward - backward) / (2.0 * probe_scale);
    }
    return est;
}

double hjb_residual(const Problem& problem, const CiFunctional& phi, const Position& pos) {
    if (!pos.interior())
        throw std::invalid_argument("hjb_residual: position must lie in G^0 (t < T)");
    double dt;
    Vec grad;
    if (phi.has_analytic()) {
        dt = phi.dt_alpha(pos);
        grad = phi.grad_alpha(pos);
    } else {
        const CiDerivativeEstimate est =
            ci_derivative_estimate(phi.value, pos, default_probe_horizon(pos.grid()), 1.0);
        dt = est.dt_alpha;
        grad = est.grad_alpha;
    }
    return dt + hamiltonian(problem, pos.time(), pos.state(), grad).value;
}

double dist(const Position& a, const Position& b) {
    if (a.grid() != b.grid())
        throw std::invalid_argument("dist: positions live on different grids");
    const Grid& grid = a.grid();

    auto one_sided = [&](const Position& p, const Position& q) {
        double worst = 0.0;
        for (int i = 0; i <= p.t_index(); ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (int j = 0; j <= q.t_index(); ++j) {
                const double dt = grid.node(i) - grid.node(j);
                const double dw2 = (p.sample(i) - q.sample(j)).squaredNorm();
                nearest = std::min(nearest, std::sqrt(dt * dt + dw2));
            }
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

double total_derivative_check(const CiFunctional& phi, const Motion& motion) {
    if (!phi.has_analytic())
        throw std::invalid_argument("total_derivative_check: functional lacks analytic derivatives");
    const double h = motion.grid().step();
    double worst = 0.0;
    Position prev = motion.position_at(motion.start_index());
    double omega_prev = phi.value(prev);
    for (int j = motion.start_index() + 1; j <= motion.end_index(); ++j) {
        Position cur = motion.position_at(j);
        const double omega = phi.value(cur);
        const double formula =
            phi.dt_alpha(prev) + phi.grad_alpha(prev).dot(motion.psi()[static_cast<std::size_t>(j - 1)]);
        worst = std::max(worst, std::fabs((omega - omega_prev) / h - formula));
        prev = std::move(cur);
        omega_prev = omega;
    }
    return worst;
}

}  // namespace fracopt
