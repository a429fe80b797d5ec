// Uniform time grids and piecewise-constant sampled signals.
//
// Every sampled object in this library lives on a Grid: a uniform
// discretization of [0, T] into N cells that also carries the fractional
// order alpha. The grid precomputes the convolution weights
// c_k = k^alpha - (k-1)^alpha used by the product-rectangle quadrature,
// so that fractional integrals of piecewise-constant data are evaluated
// exactly (up to roundoff).
#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace fracopt {

using Vec = Eigen::VectorXd;

class Grid {
public:
    Grid(double time_horizon, int steps, double order);

    double time_horizon() const { return T_; }
    int steps() const { return N_; }
    double order() const { return alpha_; }
    double step() const { return h_; }

    // tau_j = j * h, j in [0, N].
    double node(int j) const { return h_ * static_cast<double>(j); }

    // Convolution weight c_k = k^alpha - (k-1)^alpha, k in [1, N].
    double conv_weight(int k) const { return weights_[static_cast<std::size_t>(k)]; }

    // h^alpha / Gamma(alpha + 1); the scale of one quadrature cell.
    double quad_scale() const { return quad_scale_; }

    bool operator==(const Grid& other) const {
        return T_ == other.T_ && N_ == other.N_ && alpha_ == other.alpha_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    double T_;
    int N_;
    double alpha_;
    double h_;
    double quad_scale_;
    std::vector<double> weights_;
};

// One R^n value per grid cell [tau_j, tau_{j+1}); the representative of an
// essentially bounded function that is constant on each cell. A signal may
// cover fewer cells than the grid has; operators treat uncovered cells as
// zero (the signal's support ends where its samples do).
struct SampledSignal {
    Grid grid;
    std::vector<Vec> cells;

    SampledSignal(Grid g, std::vector<Vec> cell_values);

    int covered_cells() const { return static_cast<int>(cells.size()); }
    int dim() const { return cells.empty() ? 0 : static_cast<int>(cells.front().size()); }

    // ess-sup norm over the covered cells (0 for an empty signal).
    double sup_norm() const;
};

}  // namespace fracopt
