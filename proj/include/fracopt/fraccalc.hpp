// Discrete fractional operators on grids: the Riemann-Liouville integral of
// piecewise-constant signals and its inverse, the Caputo-derivative
// reconstruction from node samples.
#pragma once

#include "fracopt/grid.hpp"

namespace fracopt {

// (I^alpha psi)(tau_j) by product-rectangle quadrature:
//   sum_{i < j} psi_i * [(tau_j - tau_i)^a - (tau_j - tau_{i+1})^a] / Gamma(a+1).
// Exact for piecewise-constant psi. Cells beyond the signal's support
// contribute zero, so j may exceed the covered range (up to N); this is the
// history term of a motion evaluated at a later time.
Vec rl_integral(const SampledSignal& psi, int j);

// (I^alpha psi)(tau) at an arbitrary time tau in [0, T]; same quadrature with
// the last cell clipped at tau. Used by tests probing between nodes.
Vec rl_integral_at(const SampledSignal& psi, double tau);

// Inverse of x |-> x(0) + I^alpha x on node samples: returns the
// piecewise-constant psi whose fractional integral reproduces
// x(tau_j) - x(tau_0) at every sampled node (forward solve of the
// lower-triangular quadrature system).
SampledSignal caputo_reconstruct(const Grid& grid, const std::vector<Vec>& node_samples);

}  // namespace fracopt
