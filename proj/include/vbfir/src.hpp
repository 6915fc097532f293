#pragma once

// Accumulator-driven arbitrary sampling rate converter on top of the Pascal
// fractional delay. Output k reads the input at continuous position k * srcf.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vbfir/core.hpp"
#include "vbfir/pascal.hpp"

namespace vbfir {

struct SrcConfig {
    double srcf = 1.0;  ///< read-position spacing in input samples
    int order = 1;      ///< Pascal order; 1 suffices for smooth inputs

    SrcConfig() = default;
    SrcConfig(double conversion_factor, int pascal_order = 1) : srcf(conversion_factor), order(pascal_order) {
        if (!(srcf > 0.0) || !std::isfinite(srcf)) throw std::invalid_argument("conversion factor must be positive");
        if (order < 1) throw std::invalid_argument("pascal order must be at least 1");
    }
};

/// Accumulator after `out_count` outputs. acc is always out_count * srcf.
struct SrcState {
    double acc = 0.0;
    std::size_t out_count = 0;
};

inline SrcState advance(const SrcState& s, double srcf) {
    const std::size_t next = s.out_count + 1;
    return {static_cast<double>(next) * srcf, next};
}

struct FracIndex {
    double d;        ///< fractional part of the accumulator
    std::int64_t i;  ///< ceil of the accumulator: tap index read from the delayed sequence
};

inline FracIndex frac_and_index(double acc) {
    if (!(acc >= 0.0)) throw std::invalid_argument("accumulator must be non-negative");
    const double fl = std::floor(acc);
    return {acc - fl, static_cast<std::int64_t>(std::ceil(acc))};
}

/// Delay that places the read position on an integer output index: 1 - d, or 0 when d == 0.
inline double delay_from_frac(double d) {
    if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("fractional part must lie in [0, 1)");
    return d == 0.0 ? 0.0 : 1.0 - d;
}

namespace detail {

// Accumulator values within this relative distance of an integer are read as
// that integer, so 1/r style factors land on exact samples.
inline constexpr double kAccSnap = 1e-12;

inline double snapped(double acc) {
    const double r = std::round(acc);
    return std::abs(acc - r) <= kAccSnap * std::max(1.0, r) ? r : acc;
}

}  // namespace detail

/// Resamples x at positions 0, srcf, 2 srcf, ... up to the last input sample.
/// Positions past the support read zero-extended input.
inline Signal convert(const Signal& x, const SrcConfig& cfg) {
    if (x.empty()) throw std::invalid_argument("empty signal");
    if (!(cfg.srcf > 0.0)) throw std::invalid_argument("conversion factor must be positive");
    if (cfg.order < 1) throw std::invalid_argument("pascal order must be at least 1");

    const double last = static_cast<double>(x.size() - 1);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last / cfg.srcf) + 2);
    std::size_t transient = 0;

    for (SrcState st; ; st = advance(st, cfg.srcf)) {
        const double acc = detail::snapped(st.acc);
        if (acc > last) break;
        const auto [d, i] = frac_and_index(acc);
        if (i < cfg.order) ++transient;
        const auto taps = detail::pascal_taps(cfg.order, delay_from_frac(d));
        double y = 0.0;
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const auto n = i - static_cast<std::int64_t>(k);
            if (n >= 0 && n < static_cast<std::int64_t>(x.size())) y += taps[k] * x.samples[static_cast<std::size_t>(n)];
        }
        out.push_back(y);
    }
    return Signal(std::move(out), 0, transient);
}

/// Multipliers of one converter: the Pascal structure plus the (1 - d) multiplier.
inline int src_multiplier_count(int order) {
    return pascal_multiplier_count(order) + 1;
}

}  // namespace vbfir
