#include "odorchain/fracsolve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace odorchain {

namespace {

// Entire reciprocal gamma via reflection, so poles of Gamma(1 - alpha k)
// contribute exact zeros in the asymptotic series.
long double reciprocal_gamma(long double x) {
    if (x > 0.5L) return 1.0L / std::tgammal(x);
    const long double pi = std::numbers::pi_v<long double>;
    return std::tgammal(1.0L - x) * std::sinl(pi * x) / pi;
}

double ml_series(double alpha, double z) {
    // E_alpha(z) = sum_k z^k / Gamma(alpha k + 1), term-ratio stopping.
    long double sum = 0.0L;
    long double zk = 1.0L;
    const long double zl = z;
    for (int k = 0; k < 10000; ++k) {
        const long double term = zk * reciprocal_gamma(alpha * k + 1.0L);
        sum += term;
        zk *= zl;
        if (std::fabsl(term) < 1e-16L * std::fabsl(sum) && k > 4) break;
        if (!std::isfinite(static_cast<double>(sum)))
            throw std::range_error("mittag_leffler: series overflow");
    }
    return static_cast<double>(sum);
}

double ml_asymptotic_negative(double alpha, double z) {
    // E_alpha(z) ~ -sum_{k>=1} z^{-k} / Gamma(1 - alpha k) as z -> -inf.
    // Truncated at the smallest term (optimal truncation).
    long double sum = 0.0L;
    long double prev = std::numeric_limits<long double>::max();
    const long double zinv = 1.0L / static_cast<long double>(z);
    long double zpow = zinv;
    for (int k = 1; k <= 40; ++k) {
        const long double term = -zpow * reciprocal_gamma(1.0L - alpha * k);
        if (std::fabsl(term) > prev) break;
        sum += term;
        prev = std::fabsl(term);
        zpow *= zinv;
    }
    return static_cast<double>(sum);
}

} // namespace

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("mittag_leffler: alpha outside (0,1]");
    if (!std::isfinite(z)) throw std::invalid_argument("mittag_leffler: non-finite z");
    if (alpha == 1.0) {
        if (z > 709.0) throw std::range_error("mittag_leffler: overflow for large positive z");
        return std::exp(z);
    }
    if (z > 0.0) {
        // E_alpha grows like exp(z^(1/alpha))/alpha on the positive axis.
        if (std::pow(z, 1.0 / alpha) > 700.0)
            throw std::range_error("mittag_leffler: overflow for large positive z");
        return ml_series(alpha, z);
    }
    if (z >= -10.0) return ml_series(alpha, z);
    return ml_asymptotic_negative(alpha, z);
}

} // namespace odorchain
