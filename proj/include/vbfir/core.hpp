#pragma once

// Shared value types for the filter toolkit: signals, FIR filters, lowpass
// specifications, and the polynomial arithmetic every other module builds on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vbfir {

/// Finite real sequence anchored at an absolute sample index.
///
/// Samples outside [start_index, start_index + size) read as zero. `transient`
/// counts leading samples that depend on the implicit zeros before the
/// support (the startup transient of a causal filter).
struct Signal {
    std::vector<double> samples;
    std::int64_t start_index = 0;
    std::size_t transient = 0;

    Signal() = default;
    explicit Signal(std::vector<double> s, std::int64_t start = 0, std::size_t tr = 0)
        : samples(std::move(s)), start_index(start), transient(tr) {}

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
    [[nodiscard]] std::int64_t end_index() const noexcept {
        return start_index + static_cast<std::int64_t>(samples.size());
    }

    /// Value at absolute index n, zero outside the support.
    [[nodiscard]] double at(std::int64_t n) const noexcept {
        const auto k = n - start_index;
        if (k < 0 || k >= static_cast<std::int64_t>(samples.size())) return 0.0;
        return samples[static_cast<std::size_t>(k)];
    }

    static Signal impulse(std::size_t length, std::size_t position = 0) {
        if (position >= length) throw std::invalid_argument("impulse position outside signal");
        std::vector<double> s(length, 0.0);
        s[position] = 1.0;
        return Signal(std::move(s));
    }
};

/// Sum aligned by absolute index; the result spans the union of both supports.
inline Signal add(const Signal& a, const Signal& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const auto lo = std::min(a.start_index, b.start_index);
    const auto hi = std::max(a.end_index(), b.end_index());
    std::vector<double> out(static_cast<std::size_t>(hi - lo));
    for (auto n = lo; n < hi; ++n) out[static_cast<std::size_t>(n - lo)] = a.at(n) + b.at(n);
    return Signal(std::move(out), lo);
}

inline Signal scale(const Signal& x, double c) {
    Signal y = x;
    for (auto& v : y.samples) v *= c;
    return y;
}

namespace detail {

inline std::vector<double> poly_mul(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
    }
    return out;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

/// Linear convolution of two signals; start indices add.
inline Signal convolve(const Signal& a, const Signal& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty signal");
    return Signal(detail::poly_mul(a.samples, b.samples), a.start_index + b.start_index);
}

/// True if coeffs[k] == coeffs[T-1-k] within `rel_tol` of the largest coefficient.
inline bool is_mirror_symmetric(std::span<const double> c, double rel_tol = 1e-12) {
    const double tol = rel_tol * std::max(detail::max_abs(c), 1e-300);
    for (std::size_t k = 0, T = c.size(); k < T / 2; ++k) {
        if (std::abs(c[k] - c[T - 1 - k]) > tol) return false;
    }
    return true;
}

/// Real FIR coefficient set with a symmetry flag and nominal group delay in samples.
///
/// Immutable after construction. A filter flagged symmetric is validated on
/// construction and always carries group delay (T-1)/2.
class FirFilter {
public:
    FirFilter() = default;

    FirFilter(std::vector<double> coeffs, bool symmetric, double group_delay)
        : coeffs_(std::move(coeffs)), symmetric_(symmetric), group_delay_(group_delay) {
        if (group_delay_ < 0.0 || !std::isfinite(group_delay_))
            throw std::invalid_argument("group delay must be finite and non-negative");
        if (symmetric_) {
            if (!is_mirror_symmetric(coeffs_))
                throw std::invalid_argument("coefficients flagged symmetric are not mirror-symmetric");
            group_delay_ = coeffs_.empty() ? 0.0 : 0.5 * static_cast<double>(coeffs_.size() - 1);
        }
    }

    /// Symmetric (linear-phase) filter; throws if the taps are not mirror-symmetric.
    static FirFilter linear_phase(std::vector<double> coeffs) {
        return FirFilter(std::move(coeffs), true, 0.0);
    }

    /// Symmetry detected from the taps; asymmetric filters get delay (T-1)/2 as a nominal value.
    static FirFilter from_taps(std::vector<double> coeffs) {
        const bool sym = is_mirror_symmetric(coeffs);
        const double gd = coeffs.empty() ? 0.0 : 0.5 * static_cast<double>(coeffs.size() - 1);
        return FirFilter(std::move(coeffs), sym, gd);
    }

    /// Unit impulse at `position` within a filter of length `length`.
    static FirFilter delta(std::size_t length = 1, std::size_t position = 0) {
        if (position >= length) throw std::invalid_argument("delta position outside filter");
        std::vector<double> c(length, 0.0);
        c[position] = 1.0;
        return FirFilter(std::move(c), length == 2 * position + 1, static_cast<double>(position));
    }

    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] bool is_symmetric() const noexcept { return symmetric_; }
    [[nodiscard]] double group_delay() const noexcept { return group_delay_; }
    [[nodiscard]] double operator[](std::size_t k) const { return coeffs_[k]; }

    friend bool operator==(const FirFilter&, const FirFilter&) = default;

private:
    std::vector<double> coeffs_;
    bool symmetric_ = false;
    double group_delay_ = 0.0;
};

/// Lowpass specification. Edges are fractions of pi rad/sample.
struct FilterSpec {
    double passband_edge = 0.0;
    double stopband_edge = 0.0;
    double max_ripple_db = 0.0;
    double min_atten_db = 0.0;

    FilterSpec() = default;
    FilterSpec(double wp, double ws, double ripple_db, double atten_db)
        : passband_edge(wp), stopband_edge(ws), max_ripple_db(ripple_db), min_atten_db(atten_db) {
        validate();
    }

    void validate() const {
        if (!(passband_edge > 0.0 && passband_edge < 1.0 && stopband_edge > 0.0 && stopband_edge < 1.0))
            throw std::invalid_argument("band edges must lie strictly inside (0, 1)");
        if (!(passband_edge < stopband_edge))
            throw std::invalid_argument("passband edge must be below stopband edge");
        if (!(max_ripple_db > 0.0) || !(min_atten_db > 0.0))
            throw std::invalid_argument("ripple and attenuation must be positive");
    }

    [[nodiscard]] double transition_width() const noexcept { return stopband_edge - passband_edge; }

    friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

/// Polynomial product of the coefficient sequences; group delays add.
inline FirFilter convolve(const FirFilter& a, const FirFilter& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty filter");
    auto c = detail::poly_mul(a.coeffs(), b.coeffs());
    const double gd = a.group_delay() + b.group_delay();
    if (a.is_symmetric() && b.is_symmetric()) return FirFilter(std::move(c), true, gd);
    return FirFilter(std::move(c), false, gd);
}

/// F(z) -> F(z^L): L-1 zeros between consecutive taps.
inline FirFilter zero_stuff(const FirFilter& f, std::size_t L) {
    if (L == 0) throw std::invalid_argument("zero-stuffing factor must be at least 1");
    if (f.empty()) throw std::invalid_argument("empty filter");
    std::vector<double> out(L * (f.size() - 1) + 1, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) out[k * L] = f[k];
    return FirFilter(std::move(out), f.is_symmetric(), f.group_delay() * static_cast<double>(L));
}

/// Delay-complementary filter: unit impulse at the centre tap minus f.
inline FirFilter subtract_from_delay(const FirFilter& f) {
    if (f.size() % 2 == 0 || !f.is_symmetric())
        throw std::invalid_argument("complementary filter requires odd-length symmetric prototype");
    std::vector<double> c(f.size());
    std::transform(f.coeffs().begin(), f.coeffs().end(), c.begin(), [](double v) { return -v; });
    c[(f.size() - 1) / 2] += 1.0;
    return FirFilter::linear_phase(std::move(c));
}

/// Zero-pads a symmetric filter equally on both sides to `length` taps.
inline FirFilter center_pad(const FirFilter& f, std::size_t length) {
    if (length < f.size() || (length - f.size()) % 2 != 0)
        throw std::invalid_argument("centre padding needs a length of matching parity");
    const std::size_t pad = (length - f.size()) / 2;
    std::vector<double> c(length, 0.0);
    std::copy(f.coeffs().begin(), f.coeffs().end(), c.begin() + static_cast<std::ptrdiff_t>(pad));
    if (f.is_symmetric()) return FirFilter::linear_phase(std::move(c));
    return FirFilter(std::move(c), false, f.group_delay() + static_cast<double>(pad));
}

/// Coefficient-wise sum of two equal-length filters.
inline FirFilter add(const FirFilter& a, const FirFilter& b) {
    if (a.size() != b.size()) throw std::invalid_argument("filter lengths differ");
    std::vector<double> c(a.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    if (a.is_symmetric() && b.is_symmetric()) return FirFilter::linear_phase(std::move(c));
    return FirFilter(std::move(c), false, std::max(a.group_delay(), b.group_delay()));
}

}  // namespace vbfir
