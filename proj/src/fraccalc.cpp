#include "fracopt/fraccalc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracopt/special.hpp"

namespace fracopt {

Vec rl_integral(const SampledSignal& psi, int j) {
    if (j < 0 || j > psi.grid.steps())
        throw std::out_of_range("rl_integral: node index " + std::to_string(j) +
                                " outside [0, " + std::to_string(psi.grid.steps()) + "]");
    const int m = std::min(j, psi.covered_cells());
    Vec acc = Vec::Zero(psi.dim());
    for (int i = 0; i < m; ++i)
        acc.noalias() += psi.grid.conv_weight(j - i) * psi.cells[static_cast<std::size_t>(i)];
    return psi.grid.quad_scale() * acc;
}

Vec rl_integral_at(const SampledSignal& psi, double tau) {
    const Grid& g = psi.grid;
    if (!(tau >= 0.0 && tau <= g.time_horizon() * (1.0 + 1e-12)))
        throw std::out_of_range("rl_integral_at: time outside [0, T]");
    const double a = g.order();
    const double inv_gamma = 1.0 / gamma_fn(a + 1.0);
    Vec acc = Vec::Zero(psi.dim());
    for (int i = 0; i < psi.covered_cells(); ++i) {
        const double left = g.node(i);
        if (left >= tau) break;
        const double right = std::min(g.node(i + 1), tau);
        const double w = std::pow(tau - left, a) - std::pow(tau - right, a);
        acc.noalias() += (w * inv_gamma) * psi.cells[static_cast<std::size_t>(i)];
    }
    return acc;
}

SampledSignal caputo_reconstruct(const Grid& grid, const std::vector<Vec>& node_samples) {
    if (node_samples.empty())
        throw std::invalid_argument("caputo_reconstruct: no node samples");
    const int m = static_cast<int>(node_samples.size()) - 1;  // number of cells
    if (m > grid.steps())
        throw std::invalid_argument("caputo_reconstruct: more samples than grid nodes");
    const double diag = grid.quad_scale();  // weight of the newest cell (c_1 = 1)
    if (!std::isnormal(diag))
        throw std::runtime_error("caputo_reconstruct: singular quadrature step; "
                                 "grid spacing too small for the floating format");

    const Vec& x0 = node_samples.front();
    std::vector<Vec> psi;
    psi.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
        Vec rhs = node_samples[static_cast<std::size_t>(j)] - x0;
        for (int i = 0; i < j - 1; ++i)
            rhs.noalias() -= (diag * grid.conv_weight(j - i)) * psi[static_cast<std::size_t>(i)];
        psi.push_back(rhs / diag);
    }
    return SampledSignal(grid, std::move(psi));
}

}  // namespace fracopt
