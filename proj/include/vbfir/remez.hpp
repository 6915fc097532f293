#pragma once

// Parks-McClellan exchange for odd-length symmetric (Type I) lowpass filters.
//
// The amplitude A(w) = sum_{k=0}^{M} a_k cos(k w), M = (T-1)/2, is a polynomial
// of degree M in x = cos w. Each iteration solves the alternation problem on
// M+2 reference frequencies in barycentric form, then moves the reference to
// the extrema of the weighted error on a dense grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vbfir {

struct RemezResult {
    std::vector<double> taps;
    double deviation = 0.0;  ///< |delta|: weighted equiripple error at convergence
    int iterations = 0;
    bool converged = false;
};

namespace detail {

struct RemezGrid {
    std::vector<double> omega;  // rad/sample
    std::vector<double> x;      // cos(omega)
    std::vector<double> desired;
    std::vector<double> weight;
};

inline RemezGrid make_lowpass_grid(std::size_t basis, double wp, double ws, double stop_weight, int density) {
    RemezGrid g;
    const double step = 1.0 / (static_cast<double>(density) * static_cast<double>(basis));  // fraction of pi
    auto add_band = [&](double lo, double hi, double d, double w) {
        const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double f = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            g.omega.push_back(std::numbers::pi * f);
            g.desired.push_back(d);
            g.weight.push_back(w);
        }
    };
    add_band(0.0, wp, 1.0, 1.0);
    add_band(ws, 1.0, 0.0, stop_weight);
    g.x.resize(g.omega.size());
    for (std::size_t i = 0; i < g.omega.size(); ++i) g.x[i] = std::cos(g.omega[i]);
    return g;
}

// Barycentric weights 1 / prod_{j != i} 2 (x_i - x_j); the factor 2 keeps the
// products near unity for Chebyshev-like node sets.
inline std::vector<double> barycentric_weights(const std::vector<double>& x, std::size_t count) {
    std::vector<double> w(count);
    for (std::size_t i = 0; i < count; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < count; ++j)
            if (j != i) p *= 2.0 * (x[i] - x[j]);
        w[i] = 1.0 / p;
    }
    return w;
}

class BarycentricPoly {
public:
    BarycentricPoly(std::vector<double> nodes, std::vector<double> values)
        : nodes_(std::move(nodes)), values_(std::move(values)),
          weights_(barycentric_weights(nodes_, nodes_.size())) {}

    [[nodiscard]] double operator()(double x) const {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const double dx = x - nodes_[i];
            if (std::abs(dx) < 1e-15) return values_[i];
            const double t = weights_[i] / dx;
            num += t * values_[i];
            den += t;
        }
        return num / den;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> weights_;
};

// Local extrema of the weighted error, reduced to an alternating set of exactly `want` points.
inline std::vector<std::size_t> select_extrema(const std::vector<double>& err, std::size_t band_split,
                                               std::size_t want) {
    const std::size_t n = err.size();
    std::vector<std::size_t> ext;
    auto band_end = [&](std::size_t j) { return j == band_split - 1 || j == n - 1; };
    auto band_begin = [&](std::size_t j) { return j == 0 || j == band_split; };
    for (std::size_t j = 0; j < n; ++j) {
        const double e = err[j];
        const bool ge_prev = band_begin(j) || (e > 0 ? e >= err[j - 1] : e <= err[j - 1]);
        const bool ge_next = band_end(j) || (e > 0 ? e >= err[j + 1] : e <= err[j + 1]);
        if (e != 0.0 && ge_prev && ge_next) ext.push_back(j);
    }

    // Same-sign neighbours: keep the larger.
    std::vector<std::size_t> alt;
    for (std::size_t j : ext) {
        if (!alt.empty() && (err[j] > 0) == (err[alt.back()] > 0)) {
            if (std::abs(err[j]) > std::abs(err[alt.back()])) alt.back() = j;
        } else {
            alt.push_back(j);
        }
    }

    // Drop surplus while preserving alternation: pairs of adjacent interior
    // points around the weakest extremum, then single end points.
    while (alt.size() > want) {
        const std::size_t excess = alt.size() - want;
        if (excess == 1) {
            if (std::abs(err[alt.front()]) < std::abs(err[alt.back()])) alt.erase(alt.begin());
            else alt.pop_back();
            continue;
        }
        std::size_t weakest = 0;
        for (std::size_t i = 1; i < alt.size(); ++i)
            if (std::abs(err[alt[i]]) < std::abs(err[alt[weakest]])) weakest = i;
        if (weakest == 0 || weakest == alt.size() - 1) {
            alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(weakest));
            continue;
        }
        const std::size_t partner =
            std::abs(err[alt[weakest - 1]]) < std::abs(err[alt[weakest + 1]]) ? weakest - 1 : weakest + 1;
        const std::size_t first = std::min(weakest, partner);
        alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(first), alt.begin() + static_cast<std::ptrdiff_t>(first) + 2);
    }
    return alt;
}

struct ReferenceFit {
    double delta;
    BarycentricPoly amplitude;
};

// Alternation solution on the reference set: the levelled deviation delta and
// the amplitude interpolating D - (-1)^i delta / W on the first M+1 points.
inline ReferenceFit fit_reference(const RemezGrid& grid, const std::vector<std::size_t>& ref, std::size_t basis) {
    std::vector<double> rx(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) rx[i] = grid.x[ref[i]];
    const auto bw = barycentric_weights(rx, rx.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        num += bw[i] * grid.desired[ref[i]];
        den += sign * bw[i] / grid.weight[ref[i]];
    }
    const double delta = num / den;
    std::vector<double> values(basis);
    for (std::size_t i = 0; i < basis; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        values[i] = grid.desired[ref[i]] - sign * delta / grid.weight[ref[i]];
    }
    rx.resize(basis);
    return {delta, BarycentricPoly(std::move(rx), std::move(values))};
}

}  // namespace detail

/// Equiripple Type-I lowpass of odd `length` with edges wp < ws (fractions of
/// pi). `stop_weight` is the stopband error weight relative to the passband
/// (delta_p / delta_s for the desired ripple ratio).
inline RemezResult remez_lowpass(std::size_t length, double wp, double ws, double stop_weight, int grid_density = 16,
                                 int max_iterations = 100) {
    if (length < 3 || length % 2 == 0) throw std::invalid_argument("remez length must be odd and >= 3");
    if (!(wp > 0.0 && wp < ws && ws < 1.0)) throw std::invalid_argument("remez band edges out of order");
    if (!(stop_weight > 0.0)) throw std::invalid_argument("stopband weight must be positive");

    const std::size_t M = (length - 1) / 2;
    const std::size_t basis = M + 1;
    const std::size_t refs = M + 2;
    const auto grid = detail::make_lowpass_grid(basis, wp, ws, stop_weight, grid_density);
    const std::size_t n_grid = grid.omega.size();
    std::size_t band_split = 0;
    while (band_split < n_grid && grid.desired[band_split] == 1.0) ++band_split;
    if (n_grid < 2 * refs) throw std::invalid_argument("remez grid too coarse for the requested length");

    // Initial reference: evenly spread over the grid.
    std::vector<std::size_t> ref(refs);
    for (std::size_t i = 0; i < refs; ++i)
        ref[i] = static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(n_grid - 1) /
                                                       static_cast<double>(refs - 1)));

    RemezResult result;
    std::vector<double> err(n_grid);

    for (int it = 1; it <= max_iterations; ++it) {
        result.iterations = it;
        const auto fit = detail::fit_reference(grid, ref, basis);

        double max_err = 0.0;
        for (std::size_t j = 0; j < n_grid; ++j) {
            err[j] = grid.weight[j] * (fit.amplitude(grid.x[j]) - grid.desired[j]);
            max_err = std::max(max_err, std::abs(err[j]));
        }

        auto next = detail::select_extrema(err, band_split, refs);
        if (next.size() < refs) break;  // degenerate; keep the current reference

        double min_ext = std::numeric_limits<double>::infinity(), max_ext = 0.0;
        for (std::size_t j : next) {
            min_ext = std::min(min_ext, std::abs(err[j]));
            max_ext = std::max(max_ext, std::abs(err[j]));
        }
        const double ad = std::abs(fit.delta);
        const bool same_ref = next == ref;
        ref = std::move(next);
        if (same_ref || (max_ext - min_ext) <= 1e-6 * max_ext || (max_err - ad) <= 1e-9 * ad) {
            result.converged = true;
            break;
        }
    }

    // Coefficients from A sampled at x_j = cos(pi j / M) (inverse DCT-I).
    const auto fit = detail::fit_reference(grid, ref, basis);
    const auto& amp = fit.amplitude;
    std::vector<double> samples(M + 1);
    for (std::size_t j = 0; j <= M; ++j)
        samples[j] = amp(std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(M)));

    std::vector<double> a(M + 1);
    for (std::size_t k = 0; k <= M; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= M; ++j) {
            const double c = std::cos(std::numbers::pi * static_cast<double>(j * k % (2 * M)) / static_cast<double>(M));
            s += ((j == 0 || j == M) ? 0.5 : 1.0) * samples[j] * c;
        }
        a[k] = ((k == 0 || k == M) ? 1.0 : 2.0) * s / static_cast<double>(M);
    }

    result.taps.assign(length, 0.0);
    result.taps[M] = a[0];
    for (std::size_t k = 1; k <= M; ++k) {
        result.taps[M - k] = 0.5 * a[k];
        result.taps[M + k] = 0.5 * a[k];
    }
    result.deviation = std::abs(fit.delta);
    return result;
}

}  // namespace vbfir
