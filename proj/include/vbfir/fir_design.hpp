#pragma once

// Lowpass design to a FilterSpec: empirical length estimate, Remez exchange,
// and a length search that stops at the shortest odd length meeting the spec
// on the analysis grid.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vbfir/analysis.hpp"
#include "vbfir/core.hpp"
#include "vbfir/remez.hpp"

namespace vbfir {

inline constexpr std::size_t kMaxDesignLength = 8192;

/// Passband deviation whose DC-normalised excursion (1-d)/(1+d) spans `ripple_db`.
inline double passband_deviation(double ripple_db) {
    const double g = std::pow(10.0, ripple_db / 20.0);
    return (g - 1.0) / (g + 1.0);
}

inline double stopband_deviation(double atten_db) { return std::pow(10.0, -atten_db / 20.0); }

/// Odd length estimate (Herrmann-Rabiner-Chan) for an equiripple design of `spec`.
inline std::size_t estimate_order(const FilterSpec& spec) {
    spec.validate();
    const double dp = passband_deviation(spec.max_ripple_db);
    const double ds = stopband_deviation(spec.min_atten_db);
    const double ldp = std::log10(dp), lds = std::log10(ds);
    const double d_inf = (5.309e-3 * ldp * ldp + 7.114e-2 * ldp - 4.761e-1) * lds -
                         (2.66e-3 * ldp * ldp + 5.941e-1 * ldp + 4.278e-1);
    const double f_k = 11.01217 + 0.51244 * (ldp - lds);
    const double df = 0.5 * spec.transition_width();  // cycles/sample
    const double n = d_inf / df - f_k * df + 1.0;
    auto len = static_cast<std::size_t>(std::ceil(std::max(n, 3.0)));
    if (len % 2 == 0) ++len;
    return len;
}

struct DesignResult {
    FirFilter filter;
    double achieved_ripple_db = 0.0;
    double achieved_atten_db = 0.0;
    int iterations = 0;  ///< Remez iterations of the returned design
};

/// Raised when no length up to the guard meets the spec; carries the best attempt.
class DesignError : public std::runtime_error {
public:
    DesignError(const std::string& what, DesignResult best) : std::runtime_error(what), best_(std::move(best)) {}
    [[nodiscard]] const DesignResult& best() const noexcept { return best_; }

private:
    DesignResult best_;
};

struct DesignOptions {
    std::size_t max_length = kMaxDesignLength;
    std::size_t grid_size = kDefaultGridSize;
    int grid_density = 16;
    int max_escalations = 64;  ///< +2 steps tried past the estimate
};

namespace detail {

inline DesignResult design_at_length(const FilterSpec& spec, std::size_t length, const DesignOptions& opt) {
    const double dp = passband_deviation(spec.max_ripple_db);
    const double ds = stopband_deviation(spec.min_atten_db);
    auto r = remez_lowpass(length, spec.passband_edge, spec.stopband_edge, dp / ds, opt.grid_density);
    DesignResult out{FirFilter::linear_phase(std::move(r.taps)), 0.0, 0.0, r.iterations};
    const auto m = measure(out.filter, spec, opt.grid_size);
    out.achieved_ripple_db = m.passband_ripple_db;
    out.achieved_atten_db = m.stopband_atten_db;
    return out;
}

inline bool meets(const DesignResult& r, const FilterSpec& spec) {
    return r.achieved_ripple_db <= spec.max_ripple_db && r.achieved_atten_db >= spec.min_atten_db;
}

}  // namespace detail

/// Shortest odd-length equiripple lowpass meeting `spec`, starting from the
/// length estimate and stepping by 2 in whichever direction is needed.
inline DesignResult design_lowpass(const FilterSpec& spec, const DesignOptions& opt = {}) {
    const std::size_t start = estimate_order(spec);
    if (start > opt.max_length) {
        std::ostringstream msg;
        msg << "estimated length " << start << " exceeds the " << opt.max_length << "-tap guard";
        throw DesignError(msg.str(), {});
    }

    std::size_t length = start;
    auto current = detail::design_at_length(spec, length, opt);
    if (detail::meets(current, spec)) {
        while (length >= 5) {
            auto shorter = detail::design_at_length(spec, length - 2, opt);
            if (!detail::meets(shorter, spec)) break;
            length -= 2;
            current = std::move(shorter);
        }
        return current;
    }

    DesignResult best = current;
    for (int step = 0; step < opt.max_escalations && length + 2 <= opt.max_length; ++step) {
        length += 2;
        current = detail::design_at_length(spec, length, opt);
        if (detail::meets(current, spec)) return current;
        if (current.achieved_atten_db - current.achieved_ripple_db > best.achieved_atten_db - best.achieved_ripple_db)
            best = current;
    }
    std::ostringstream msg;
    msg << "cannot meet spec by length " << length << " (best ripple " << best.achieved_ripple_db
        << " dB, attenuation " << best.achieved_atten_db << " dB)";
    throw DesignError(msg.str(), best);
}

}  // namespace vbfir
