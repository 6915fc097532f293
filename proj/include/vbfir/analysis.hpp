#pragma once

// Frequency-response evaluation and lowpass metric extraction. Every reported
// dB number in the toolkit comes from `measure`: band edges on the grid
// w = k pi / G, band peaks refined on a denser grid.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "vbfir/core.hpp"

namespace vbfir {

inline constexpr std::size_t kDefaultGridSize = 8192;

struct ResponsePoint {
    double omega;                ///< rad/sample in [0, pi]
    std::complex<double> value;  ///< H(e^{j omega})
};

using FrequencyResponse = std::vector<ResponsePoint>;

namespace detail {

inline void check_grid(std::size_t grid_size) {
    if (grid_size < 1024 || (grid_size & (grid_size - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two >= 1024");
}

inline double grid_omega(std::size_t k, std::size_t grid_size) {
    return std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_size);
}

}  // namespace detail

/// H on omega = k pi / G, k = 0..G, via a 2G-point FFT of the time-folded taps.
inline FrequencyResponse freq_response(const FirFilter& f, std::size_t grid_size = kDefaultGridSize) {
    if (f.empty()) throw std::invalid_argument("empty filter");
    detail::check_grid(grid_size);
    const std::size_t n_fft = 2 * grid_size;
    // e^{-j pi k n / G} has period 2G in n, so longer filters fold without error.
    std::vector<double> folded(n_fft, 0.0);
    for (std::size_t n = 0; n < f.size(); ++n) folded[n % n_fft] += f[n];

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, folded);

    FrequencyResponse out(grid_size + 1);
    for (std::size_t k = 0; k <= grid_size; ++k) out[k] = {detail::grid_omega(k, grid_size), spectrum[k]};
    return out;
}

/// Same grid by direct summation; O(T G), used to cross-check the transform path.
inline FrequencyResponse freq_response_direct(const FirFilter& f, std::size_t grid_size = kDefaultGridSize) {
    if (f.empty()) throw std::invalid_argument("empty filter");
    detail::check_grid(grid_size);
    const std::size_t period = 2 * grid_size;
    std::vector<double> cos_table(period), sin_table(period);
    for (std::size_t m = 0; m < period; ++m) {
        const double w = std::numbers::pi * static_cast<double>(m) / static_cast<double>(grid_size);
        cos_table[m] = std::cos(w);
        sin_table[m] = std::sin(w);
    }
    FrequencyResponse out(grid_size + 1);
    for (std::size_t k = 0; k <= grid_size; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < f.size(); ++n) {
            const std::size_t m = (k * n) % period;
            re += f[n] * cos_table[m];
            im -= f[n] * sin_table[m];
        }
        out[k] = {detail::grid_omega(k, grid_size), {re, im}};
    }
    return out;
}

struct ResponseMetrics {
    double passband_ripple_db = 0.0;
    double stopband_atten_db = 0.0;
    double measured_passband_edge = 0.0;  ///< fraction of pi
    double measured_stopband_edge = 0.0;  ///< fraction of pi
    std::size_t grid_size = kDefaultGridSize;
};

/// Magnitude in dB relative to the DC gain, one entry per grid point.
inline std::vector<double> normalized_magnitude_db(const FrequencyResponse& h) {
    const double dc = std::abs(h.front().value);
    if (!(dc > 0.0)) throw std::domain_error("unmeasurable: zero DC gain");
    std::vector<double> db(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        db[k] = 20.0 * std::log10(std::max(std::abs(h[k].value) / dc, 1e-300));
    return db;
}

namespace detail {

/// Oversampling of the peak search relative to the analysis grid.
inline constexpr std::size_t kPeakOversample = 8;

inline double abs_at(const FirFilter& f, double omega) {
    std::complex<double> s = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) s += f[n] * std::polar(1.0, -omega * static_cast<double>(n));
    return std::abs(s);
}

/// Largest q over [lo, hi] (fractions of pi) sampled at k / D, with a parabolic
/// vertex through every interior local maximum.
inline double refined_max(const std::vector<double>& q, std::size_t D, double lo, double hi) {
    const auto d = static_cast<double>(D);
    const auto first = static_cast<std::size_t>(std::ceil(lo * d - 1e-9));
    const auto last = std::min(D, static_cast<std::size_t>(std::floor(hi * d + 1e-9)));
    double best = -1e300;
    for (std::size_t k = first; k <= last; ++k) {
        best = std::max(best, q[k]);
        if (k == 0 || k == D || q[k] < q[k - 1] || q[k] < q[k + 1]) continue;
        const double a = q[k - 1], b = q[k], c = q[k + 1];
        const double den = a - 2.0 * b + c;
        if (!(den < 0.0)) continue;
        const double off = 0.5 * (a - c) / den;
        const double pos = (static_cast<double>(k) + off) / d;
        if (pos < lo || pos > hi) continue;
        best = std::max(best, b - 0.25 * (a - c) * off);
    }
    return best;
}

}  // namespace detail

/// Ripple and attenuation against a lowpass spec after normalising to unity DC gain.
///
/// Ripple is max |dB| over [0, passband_edge]; attenuation is -max dB over
/// [stopband_edge, 1]. Both peaks come from a grid kPeakOversample times finer
/// with parabolic refinement, plus the exact response at the band edges, so
/// they do not depend on the grid size. The measured passband edge is the
/// outermost grid frequency up to which |dB| stays within max(spec ripple,
/// measured ripple); the measured stopband edge is the innermost grid
/// frequency beyond which the response stays below -min(spec attenuation,
/// measured attenuation).
inline ResponseMetrics measure(const FirFilter& f, const FilterSpec& spec, std::size_t grid_size = kDefaultGridSize) {
    spec.validate();
    if (f.empty() || detail::max_abs(f.coeffs()) == 0.0) throw std::domain_error("unmeasurable: zero filter");
    const auto h = freq_response(f, grid_size);
    const auto db = normalized_magnitude_db(h);
    const auto G = static_cast<double>(grid_size);

    const std::size_t D = grid_size * detail::kPeakOversample;
    const auto dense = normalized_magnitude_db(freq_response(f, D));
    std::vector<double> dev(dense.size());
    for (std::size_t k = 0; k < dense.size(); ++k) dev[k] = std::abs(dense[k]);
    const double dc = std::abs(h.front().value);
    auto edge_db = [&](double edge) {
        return 20.0 * std::log10(std::max(detail::abs_at(f, edge * std::numbers::pi) / dc, 1e-300));
    };

    ResponseMetrics m;
    m.grid_size = grid_size;
    m.passband_ripple_db = std::max({0.0, detail::refined_max(dev, D, 0.0, spec.passband_edge),
                                     std::abs(edge_db(spec.passband_edge))});
    const double stop_peak = std::max(detail::refined_max(dense, D, spec.stopband_edge, 1.0), edge_db(spec.stopband_edge));
    m.stopband_atten_db = std::max(0.0, -stop_peak);

    const double ripple_bound = std::max(spec.max_ripple_db, m.passband_ripple_db);
    std::size_t pe = 0;
    while (pe + 1 <= grid_size && std::abs(db[pe + 1]) <= ripple_bound) ++pe;
    m.measured_passband_edge = static_cast<double>(pe) / G;

    const double atten_bound = std::min(spec.min_atten_db, m.stopband_atten_db);
    std::size_t se = grid_size;
    while (se > 0 && db[se - 1] <= -atten_bound) --se;
    m.measured_stopband_edge = static_cast<double>(se) / G;
    return m;
}

struct Verification {
    bool passed = false;
    ResponseMetrics metrics;
};

inline Verification verify_spec(const FirFilter& f, const FilterSpec& spec, std::size_t grid_size = kDefaultGridSize) {
    const auto m = measure(f, spec, grid_size);
    return {m.passband_ripple_db <= spec.max_ripple_db && m.stopband_atten_db >= spec.min_atten_db, m};
}

}  // namespace vbfir
