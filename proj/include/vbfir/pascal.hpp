#pragma once

// Pascal-polynomial fractional delay:
//
//   H(z, f) = sum_{k=0}^{N} P(f, k) (1 - z^-1)^k
//
// evaluated either as flattened taps or as the nested difference cascade
// whose stage gains are the factors (1 - (f+1)/m).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "vbfir/core.hpp"

namespace vbfir {

/// P(f, k) = (-1)^k f(f-1)...(f-k+1) / k!
inline double pascal_coeff(double f, int k) {
    if (k < 0) throw std::invalid_argument("pascal degree must be non-negative");
    double num = 1.0;
    double fact = 1.0;
    for (int m = 0; m < k; ++m) {
        num *= (f - m);
        fact *= (m + 1);
    }
    return (k % 2 == 0 ? 1.0 : -1.0) * num / fact;
}

/// P(f, k) as the running product prod_{m=1..k} (1 - (f+1)/m), k >= 1.
inline double pascal_coeff_product_form(double f, int k) {
    if (k < 1) throw std::invalid_argument("product form is defined for k >= 1");
    double p = 1.0;
    for (int m = 1; m <= k; ++m) p *= 1.0 - (f + 1.0) / m;
    return p;
}

/// Order N >= 1 and fractional delay f in [0, 1).
struct PascalDelay {
    int order = 1;
    double fraction = 0.0;

    PascalDelay() = default;
    PascalDelay(int n, double f) : order(n), fraction(f) {
        if (order < 1) throw std::invalid_argument("pascal order must be at least 1");
        if (!(fraction >= 0.0 && fraction < 1.0)) throw std::invalid_argument("fraction must lie in [0, 1)");
    }
};

namespace detail {

// Taps of H(z, f) without the [0, 1) restriction on f.
inline std::vector<double> pascal_taps(int order, double f) {
    std::vector<double> taps(static_cast<std::size_t>(order) + 1, 0.0);
    // (1 - z^-1)^k expanded row by row; binom holds C(k, j) (-1)^j.
    std::vector<double> binom(static_cast<std::size_t>(order) + 1, 0.0);
    binom[0] = 1.0;
    double p = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            p *= 1.0 - (f + 1.0) / k;
            for (int j = k; j >= 1; --j) binom[j] -= binom[j - 1];
        }
        for (int j = 0; j <= k; ++j) taps[j] += p * binom[j];
    }
    return taps;
}

}  // namespace detail

/// Flattened FIR taps of length N+1. Not symmetric; nominal group delay is f.
inline FirFilter delay_taps(const PascalDelay& d) {
    return FirFilter(detail::pascal_taps(d.order, d.fraction), false, d.fraction);
}

/// Tap form: y[n] = sum_k taps[k] x[n-k], same support as x.
inline Signal apply_delay(const Signal& x, const PascalDelay& d) {
    if (x.empty()) throw std::invalid_argument("empty signal");
    const auto taps = detail::pascal_taps(d.order, d.fraction);
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t n = 0; n < y.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < taps.size() && k <= n; ++k) acc += taps[k] * x.samples[n - k];
        y[n] = acc;
    }
    return Signal(std::move(y), x.start_index, std::min<std::size_t>(static_cast<std::size_t>(d.order), x.size()));
}

/// Structural form: the difference cascade with nested stage gains
///
///   y = d0 + c1 (d1 + c2 (d2 + ... + cN dN)),   c_m = 1 - (f+1)/m,  d_k = (1 - z^-1)^k x.
///
/// Accepts any f in [0, 1]; f = 1 yields a unit delay.
inline Signal apply_delay_structural(const Signal& x, int order, double f) {
    if (x.empty()) throw std::invalid_argument("empty signal");
    if (order < 1) throw std::invalid_argument("pascal order must be at least 1");
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fraction must lie in [0, 1]");

    const std::size_t n_samples = x.size();
    std::vector<std::vector<double>> diff(static_cast<std::size_t>(order) + 1);
    diff[0] = x.samples;
    for (std::size_t k = 1; k < diff.size(); ++k) {
        const auto& prev = diff[k - 1];
        auto& cur = diff[k];
        cur.resize(n_samples);
        cur[0] = prev[0];
        for (std::size_t n = 1; n < n_samples; ++n) cur[n] = prev[n] - prev[n - 1];
    }

    std::vector<double> y(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        double acc = diff.back()[n];
        for (int m = order; m >= 1; --m) {
            acc *= 1.0 - (f + 1.0) / m;
            acc += diff[static_cast<std::size_t>(m) - 1][n];
        }
        y[n] = acc;
    }
    return Signal(std::move(y), x.start_index, std::min<std::size_t>(static_cast<std::size_t>(order), n_samples));
}

/// Multipliers in the Pascal structure of order N: 1, 3, then 2N-1.
inline int pascal_multiplier_count(int order) {
    if (order < 1) throw std::invalid_argument("pascal order must be at least 1");
    if (order == 1) return 1;
    if (order == 2) return 3;
    return 2 * order - 1;
}

}  // namespace vbfir
