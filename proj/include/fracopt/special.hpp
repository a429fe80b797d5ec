// Special functions: gamma and the one-parameter Mittag-Leffler function.
#pragma once

namespace fracopt {

// Gamma(x) for x > 0. Throws std::domain_error otherwise.
double gamma_fn(double x);

// Mittag-Leffler E_alpha(z) = sum_k z^k / Gamma(alpha*k + 1), alpha in (0, 1].
//
// Evaluated by the truncated power series with term-magnitude stopping and
// extended-precision accumulation; certified for |z| <= 50 at absolute
// error 1e-9. Throws std::domain_error for alpha outside (0, 1] and
// std::runtime_error if the series budget (1e5 terms) is exhausted before
// the stopping criterion is met.
double mittag_leffler(double alpha, double z);

// Hoelder constant of the fractional integral: H_alpha = 2 / Gamma(alpha + 1).
double holder_constant(double alpha);

}  // namespace fracopt
