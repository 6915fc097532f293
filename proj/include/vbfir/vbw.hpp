#pragma once

// Continuously variable bandwidth from one fixed lowpass: a unit impulse is
// resampled by rf, filtered by the fixed filter, and resampled back by 1/rf.
// The result is a new FIR whose bandwidth is the fixed bandwidth divided by rf.
// Also holds the software-radio channelizer presets built on that pipeline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbfir/analysis.hpp"
#include "vbfir/core.hpp"
#include "vbfir/frm.hpp"
#include "vbfir/src.hpp"

namespace vbfir {

struct VbwConfig {
    double rf = 1.0;  ///< reduction factor: >1 narrows, <1 widens
    int n1 = 1;       ///< Pascal order of the first converter (passband ripple)
    int n2 = 1;       ///< Pascal order of the second converter (stopband attenuation)

    VbwConfig() = default;
    VbwConfig(double reduction_factor, int order1, int order2) : rf(reduction_factor), n1(order1), n2(order2) {
        if (!(rf > 0.0) || !std::isfinite(rf)) throw std::invalid_argument("reduction factor must be positive");
        if (n1 < 1 || n2 < 1) throw std::invalid_argument("pascal orders must be at least 1");
    }
};

inline double rf_for_bandwidth(double fixed_bw, double desired_bw) {
    if (!(fixed_bw > 0.0) || !(desired_bw > 0.0)) throw std::invalid_argument("bandwidths must be positive");
    return fixed_bw / desired_bw;
}

/// Samples between the impulse-response main-lobe peak and its first zero crossing.
inline double npz(double fs, double fb) {
    if (!(fb > 0.0)) throw std::invalid_argument("filter bandwidth must be positive");
    return fs / fb;
}

/// Guard samples around the driving impulse; the impulse sits mid-guard so
/// the first converter sees the whole interpolation kernel.
inline std::size_t impulse_guard(int n1) { return 4 * static_cast<std::size_t>(n1 + 1); }

/// Impulse response of the variable-bandwidth filter, trimmed of leading and
/// trailing samples below 1e-10 of the peak.
inline FirFilter synthesize(const FirFilter& fixed, const VbwConfig& cfg) {
    if (fixed.empty()) throw std::invalid_argument("empty filter");
    const VbwConfig c(cfg.rf, cfg.n1, cfg.n2);

    const std::size_t guard = impulse_guard(c.n1);
    const auto length = static_cast<std::size_t>(std::ceil(c.rf * static_cast<double>(fixed.size()))) + guard;
    const Signal impulse = Signal::impulse(length, guard / 2);

    const Signal stage1 = convert(impulse, SrcConfig(c.rf, c.n1));
    const Signal filtered = convolve(stage1, Signal(fixed.coeffs()));
    const Signal out = convert(filtered, SrcConfig(1.0 / c.rf, c.n2));

    const double peak = detail::max_abs(out.samples);
    const double floor = 1e-10 * peak;
    auto first = std::find_if(out.samples.begin(), out.samples.end(), [&](double v) { return std::abs(v) > floor; });
    auto last = std::find_if(out.samples.rbegin(), out.samples.rend(), [&](double v) { return std::abs(v) > floor; });
    if (peak == 0.0 || first == out.samples.end())
        throw std::domain_error("reduction factor incompatible with fixed filter length");
    std::vector<double> taps(first, last.base());
    const auto peak_at = std::max_element(taps.begin(), taps.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    return FirFilter(std::move(taps), false, static_cast<double>(peak_at - taps.begin()));
}

inline FirFilter synthesize(const FrmFilter& fixed, const VbwConfig& cfg) { return synthesize(fixed.composed, cfg); }

/// Spec of the synthesized filter: fixed edges scaled by 1/rf, same ripple and attenuation.
inline FilterSpec scaled_spec(const FilterSpec& fixed, double rf) {
    return FilterSpec(fixed.passband_edge / rf, fixed.stopband_edge / rf, fixed.max_ripple_db, fixed.min_atten_db);
}

/// Converter multipliers of the whole pipeline.
inline int vbw_src_multipliers(const VbwConfig& cfg) { return src_multiplier_count(cfg.n1) + src_multiplier_count(cfg.n2); }

struct ChannelStandard {
    std::string name;
    double bandwidth_mhz = 0.0;
    double normalized_bw = 0.0;  ///< bandwidth_mhz / 10
};

struct ChannelOrders {
    int n1 = 1;
    int n2 = 1;
};

/// Normalised bandwidth the channelizer's fixed filter represents (0.18 pi edge on a 10 MHz scale).
inline constexpr double kChannelizerFixedBandwidth = 0.09;

inline std::vector<ChannelStandard> default_standards() {
    return {
        {"4G MBWA", 0.625, 0.0625},
        {"ADSL 2", 0.962, 0.0962},
        {"IEEE 802.15.1 (Bluetooth)", 1.0, 0.1},
        {"CDMA 2000 1x", 1.25, 0.125},
        {"Digital radio", 1.712, 0.1712},
        {"IEEE 802.16d 1x", 1.75, 0.175},
        {"IEEE 802.15.4a (Zigbee)", 2.0, 0.2},
        {"ADSL 2+", 2.109, 0.2109},
        {"CDMA 2000 2x", 2.5, 0.25},
        {"IEEE 802.16d 2x", 3.5, 0.35},
        {"CDMA 2000 3x", 3.75, 0.375},
    };
}

/// Pascal orders per default standard, aligned with default_standards().
inline std::vector<ChannelOrders> default_channel_orders() {
    return {{1, 4}, {1, 3}, {1, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 2}, {2, 2}, {2, 2}, {3, 2}, {3, 2}};
}

/// Fixed-filter spec of the default channelizer.
inline FilterSpec default_channelizer_spec() { return FilterSpec(0.18, 0.181, 0.02, 50.0); }

struct ChannelResult {
    ChannelStandard standard;
    VbwConfig config;
    FirFilter filter;
    ResponseMetrics metrics;
    int src_multipliers = 0;
    std::string error;  ///< non-empty when this standard failed

    [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

/// Synthesizes one filter per standard, in parallel. Failures are recorded per
/// standard and do not stop the others.
inline std::vector<ChannelResult> channelizer(const std::vector<ChannelStandard>& standards, const FrmFilter& fixed,
                                              const std::vector<ChannelOrders>& orders,
                                              double fixed_bw = kChannelizerFixedBandwidth,
                                              std::size_t grid_size = kDefaultGridSize) {
    if (orders.size() != standards.size()) throw std::invalid_argument("one (n1, n2) pair required per standard");

    auto run_one = [&](std::size_t k) {
        ChannelResult r;
        r.standard = standards[k];
        try {
            if (std::abs(r.standard.normalized_bw - r.standard.bandwidth_mhz / 10.0) > 1e-6)
                throw std::invalid_argument("normalized bandwidth must equal bandwidth_mhz / 10");
            r.config = VbwConfig(rf_for_bandwidth(fixed_bw, r.standard.normalized_bw), orders[k].n1, orders[k].n2);
            r.src_multipliers = vbw_src_multipliers(r.config);
            r.filter = synthesize(fixed, r.config);
            r.metrics = measure(r.filter, scaled_spec(fixed.plan.target, r.config.rf), grid_size);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        return r;
    };

    std::vector<std::future<ChannelResult>> jobs;
    jobs.reserve(standards.size());
    for (std::size_t k = 0; k < standards.size(); ++k) jobs.push_back(std::async(std::launch::async, run_one, k));
    std::vector<ChannelResult> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace vbfir
