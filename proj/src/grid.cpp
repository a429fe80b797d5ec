#include "fracopt/grid.hpp"

#include <cmath>

#include "fracopt/special.hpp"

namespace fracopt {

Grid::Grid(double time_horizon, int steps, double order)
    : T_(time_horizon), N_(steps), alpha_(order) {
    if (!(std::isfinite(T_) && T_ > 0.0))
        throw std::invalid_argument("Grid: time horizon must be positive and finite");
    if (N_ < 1)
        throw std::invalid_argument("Grid: step count must be at least 1");
    if (!(alpha_ > 0.0 && alpha_ < 1.0))
        throw std::invalid_argument("Grid: order must lie in (0, 1)");
    h_ = T_ / static_cast<double>(N_);
    quad_scale_ = std::pow(h_, alpha_) / gamma_fn(alpha_ + 1.0);

    weights_.resize(static_cast<std::size_t>(N_) + 1);
    weights_[0] = 0.0;
    if (N_ >= 1) weights_[1] = 1.0;
    for (int k = 2; k <= N_; ++k) {
        // k^a - (k-1)^a = -k^a * expm1(a * log1p(-1/k)); avoids the
        // cancellation of the naive difference for large k.
        const double kd = static_cast<double>(k);
        weights_[static_cast<std::size_t>(k)] =
            -std::pow(kd, alpha_) * std::expm1(alpha_ * std::log1p(-1.0 / kd));
    }
}

SampledSignal::SampledSignal(Grid g, std::vector<Vec> cell_values)
    : grid(g), cells(std::move(cell_values)) {
    if (static_cast<int>(cells.size()) > grid.steps())
        throw std::invalid_argument("SampledSignal: more cells than the grid has");
    const int n = cells.empty() ? 0 : static_cast<int>(cells.front().size());
    for (const Vec& v : cells) {
        if (v.size() != n)
            throw std::invalid_argument("SampledSignal: inconsistent cell dimensions");
        if (!v.allFinite())
            throw std::invalid_argument("SampledSignal: non-finite cell value");
    }
}

double SampledSignal::sup_norm() const {
    double m = 0.0;
    for (const Vec& v : cells) m = std::max(m, v.norm());
    return m;
}

}  // namespace fracopt
