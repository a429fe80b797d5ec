#include "fracopt/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracopt {

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: argument must be positive, got " + std::to_string(x));
    return std::tgamma(x);
}

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("mittag_leffler: order must lie in (0, 1], got " +
                                std::to_string(alpha));
    if (z == 0.0) return 1.0;

    constexpr int kBudget = 100000;
    const long double log_abs_z = std::log(std::fabs(static_cast<long double>(z)));
    const bool negative = z < 0.0;

    long double sum = 0.0L;
    int small_streak = 0;
    for (int k = 0; k < kBudget; ++k) {
        const long double log_term =
            static_cast<long double>(k) * log_abs_z -
            std::lgamma(static_cast<long double>(alpha) * k + 1.0L);
        long double term = std::exp(log_term);
        if (negative && (k & 1)) term = -term;
        if (!std::isfinite(term))
            throw std::runtime_error("mittag_leffler: series term overflowed for alpha=" +
                                     std::to_string(alpha) + ", z=" + std::to_string(z));
        sum += term;

        // Term magnitudes are unimodal in k; two consecutive negligible
        // terms past k = 0 mean the tail is gone.
        if (std::fabs(term) <= 1e-16L * (1.0L + std::fabs(sum))) {
            if (++small_streak >= 2 && k >= 1) {
                const double result = static_cast<double>(sum);
                if (!std::isfinite(result))
                    throw std::runtime_error("mittag_leffler: value exceeds the double range "
                                             "for alpha=" + std::to_string(alpha) +
                                             ", z=" + std::to_string(z));
                return result;
            }
        } else {
            small_streak = 0;
        }
    }
    throw std::runtime_error("mittag_leffler: series budget exhausted for alpha=" +
                             std::to_string(alpha) + ", z=" + std::to_string(z));
}

double holder_constant(double alpha) { return 2.0 / gamma_fn(alpha + 1.0); }

}  // namespace fracopt
