#pragma once

// Frequency-response masking: a sharp lowpass built from an L-fold
// zero-stuffed modal filter, its delay complement, and two masking filters,
//
//   F(z) = Fa(z^L) Fma(z) + Fc(z^L) Fmc(z),   Fc(z) = z^{-(N-1)/2} - Fa(z).
//
// A two-stage design realises the modal filter itself by the same scheme.
// Planning picks interpolation factors and subfilter edges that minimise the
// estimated multiplier count; design realises each subfilter with Remez and
// tightens the per-subfilter budgets until the composed filter meets target.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbfir/analysis.hpp"
#include "vbfir/core.hpp"
#include "vbfir/fir_design.hpp"

namespace vbfir {

/// Multipliers for a direct-form FIR: ceil(T/2) when symmetric, T otherwise.
inline int multiplier_count(const FirFilter& f) {
    const auto T = static_cast<int>(f.size());
    return f.is_symmetric() ? (T + 1) / 2 : T;
}

inline int multiplier_count_for_length(std::size_t taps) { return static_cast<int>((taps + 1) / 2); }

/// One-stage composition. Masks of unequal length are centre-padded to a common delay.
inline FirFilter compose_one_stage(const FirFilter& fa, const FirFilter& fma, const FirFilter& fmc, std::size_t L) {
    if (fa.size() % 2 == 0 || !fa.is_symmetric())
        throw std::invalid_argument("modal filter must be odd-length symmetric");
    if (!fma.is_symmetric() || !fmc.is_symmetric()) throw std::invalid_argument("masking filters must be symmetric");
    if (L == 0) throw std::invalid_argument("interpolation factor must be at least 1");
    if ((fma.size() - fmc.size()) % 2 != 0)
        throw std::invalid_argument("masking filter delays cannot be aligned (lengths differ by an odd count)");

    const std::size_t n = std::max(fma.size(), fmc.size());
    const auto ma = center_pad(fma, n);
    const auto mc = center_pad(fmc, n);
    return add(convolve(zero_stuff(fa, L), ma), convolve(zero_stuff(subtract_from_delay(fa), L), mc));
}

enum class FrmCase { A, B };

inline const char* to_string(FrmCase c) { return c == FrmCase::A ? "A" : "B"; }

/// One masking level: interpolation factor, case, and the edges of its modal
/// filter (before zero-stuffing) and both masks. Ripple/attenuation fields of
/// these specs carry the per-subfilter design budget.
struct FrmLevel {
    int L = 1;
    FrmCase which = FrmCase::A;
    int image = 0;  ///< image index m of the band-edge mapping
    FilterSpec modal;
    FilterSpec mask_a;
    FilterSpec mask_c;
};

struct FrmPlan {
    FilterSpec target;
    std::vector<FrmLevel> levels;  ///< outermost first; empty means a single direct-form filter
    FilterSpec modal;              ///< innermost modal filter spec
    double subfilter_ripple_db = 0.0;
    double subfilter_atten_db = 0.0;
    int estimated_multipliers = 0;

    [[nodiscard]] int stages() const noexcept { return static_cast<int>(levels.size()); }
    [[nodiscard]] int L1() const noexcept { return levels.empty() ? 1 : levels[0].L; }
    [[nodiscard]] int L2() const noexcept { return levels.size() < 2 ? 1 : levels[1].L; }
};

/// Subfilter names, in the order of the cost tables: modal, then masks from the innermost level outward.
inline std::string mask_name(std::size_t level, bool complementary) {
    std::string n = complementary ? "mask_c" : "mask_a";
    if (level > 0) n += std::to_string(level + 1);
    return n;
}

/// Pass/stop edges of the modal filter and masks for target edges (wp, ws) and factor L.
inline std::vector<FrmLevel> frm_levels_for(const FilterSpec& target, int L, double ripple_db, double atten_db) {
    std::vector<FrmLevel> out;
    const double wp = target.passband_edge, ws = target.stopband_edge, l = L;
    auto valid = [](double p, double s) { return p > 0.0 && p < s && s < 1.0; };
    auto spec = [&](double p, double s) { return FilterSpec(p, s, ripple_db, atten_db); };

    // Case A: the band edge comes from an image of the modal passband.
    {
        const int m = static_cast<int>(std::floor(wp * l / 2.0));
        const double theta = wp * l - 2.0 * m, phi = ws * l - 2.0 * m;
        const double ma_s = (2.0 * (m + 1) - phi) / l, mc_p = (2.0 * m - theta) / l;
        if (valid(theta, phi) && valid(wp, ma_s) && valid(mc_p, ws))
            out.push_back({L, FrmCase::A, m, spec(theta, phi), spec(wp, ma_s), spec(mc_p, ws)});
    }
    // Case B: the band edge comes from an image of the complementary passband.
    {
        const int m = static_cast<int>(std::ceil(ws * l / 2.0));
        const double theta = 2.0 * m - ws * l, phi = 2.0 * m - wp * l;
        const double ma_p = (2.0 * (m - 1) + phi) / l, mc_s = (2.0 * m + theta) / l;
        if (valid(theta, phi) && valid(ma_p, ws) && valid(wp, mc_s))
            out.push_back({L, FrmCase::B, m, spec(theta, phi), spec(ma_p, ws), spec(wp, mc_s)});
    }
    return out;
}

enum class PlanSearch {
    sequential,  ///< best one-stage factor first, then the best factor for its modal filter
    joint,       ///< every (L1, L2) pair
};

struct PlanOptions {
    int min_factor = 2;
    int max_factor = 40;
    PlanSearch search = PlanSearch::sequential;
    double ripple_divisor = 3.0;  ///< subfilter ripple = target ripple / divisor
    std::size_t max_direct_length = kMaxDesignLength;
};

class PlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int estimated_cost(const FilterSpec& s) { return multiplier_count_for_length(estimate_order(s)); }

inline int levels_cost(const std::vector<FrmLevel>& levels, const FilterSpec& modal) {
    int c = estimated_cost(modal);
    for (const auto& lv : levels) c += estimated_cost(lv.mask_a) + estimated_cost(lv.mask_c);
    return c;
}

inline std::optional<FrmLevel> best_level(const FilterSpec& spec, const PlanOptions& opt, double r, double a,
                                          int& best_cost) {
    std::optional<FrmLevel> best;
    for (int L = opt.min_factor; L <= opt.max_factor; ++L) {
        for (auto& lv : frm_levels_for(spec, L, r, a)) {
            const int c = levels_cost({lv}, lv.modal);
            if (c < best_cost) {
                best_cost = c;
                best = lv;
            }
        }
    }
    return best;
}

inline FrmPlan make_plan(const FilterSpec& target, std::vector<FrmLevel> levels, double r, double a) {
    FrmPlan p;
    p.target = target;
    p.modal = levels.empty() ? FilterSpec(target.passband_edge, target.stopband_edge, r, a) : levels.back().modal;
    p.levels = std::move(levels);
    p.subfilter_ripple_db = r;
    p.subfilter_atten_db = a;
    p.estimated_multipliers = levels_cost(p.levels, p.modal);
    return p;
}

}  // namespace detail

/// Plan with stages = 1 or 2 levels of masking; may return fewer levels when
/// the extra level does not reduce the estimated cost.
inline FrmPlan plan_frm(const FilterSpec& target, int stages, const PlanOptions& opt = {}) {
    target.validate();
    if (stages != 1 && stages != 2) throw std::invalid_argument("stages must be 1 or 2");
    if (opt.min_factor < 2 || opt.max_factor < opt.min_factor) throw std::invalid_argument("bad factor range");

    const double r = target.max_ripple_db / opt.ripple_divisor;
    const double a = target.min_atten_db;
    const FilterSpec direct(target.passband_edge, target.stopband_edge, r, a);

    int best_cost = std::numeric_limits<int>::max();
    std::optional<std::vector<FrmLevel>> best;
    if (estimate_order(direct) <= opt.max_direct_length) {
        best_cost = detail::estimated_cost(direct);
        best = std::vector<FrmLevel>{};
    }

    if (stages == 1 || opt.search == PlanSearch::sequential) {
        int one_cost = best_cost;
        if (auto lv = detail::best_level(target, opt, r, a, one_cost)) {
            best_cost = one_cost;
            best = std::vector<FrmLevel>{*lv};
            if (stages == 2) {
                int inner_cost = detail::estimated_cost(lv->modal);
                if (auto inner = detail::best_level(lv->modal, opt, r, a, inner_cost)) {
                    best = std::vector<FrmLevel>{*lv, *inner};
                    best_cost = detail::levels_cost(*best, inner->modal);
                }
            }
        }
    } else {
        for (int L1 = opt.min_factor; L1 <= opt.max_factor; ++L1) {
            for (auto& outer : frm_levels_for(target, L1, r, a)) {
                const int one = detail::levels_cost({outer}, outer.modal);
                if (one < best_cost) {
                    best_cost = one;
                    best = std::vector<FrmLevel>{outer};
                }
                for (int L2 = opt.min_factor; L2 <= opt.max_factor; ++L2) {
                    for (auto& inner : frm_levels_for(outer.modal, L2, r, a)) {
                        const int two = detail::levels_cost({outer, inner}, inner.modal);
                        if (two < best_cost) {
                            best_cost = two;
                            best = std::vector<FrmLevel>{outer, inner};
                        }
                    }
                }
            }
        }
    }

    if (!best) {
        std::ostringstream msg;
        msg << "no feasible masking plan: tried L = " << opt.min_factor << ".." << opt.max_factor
            << " (cases A and B) and a direct design longer than " << opt.max_direct_length << " taps";
        throw PlanError(msg.str());
    }
    return detail::make_plan(target, std::move(*best), r, a);
}

/// Same geometry with every subfilter budget replaced.
inline FrmPlan with_budget(const FrmPlan& plan, double ripple_db, double atten_db) {
    auto rebudget = [&](const FilterSpec& s) {
        return FilterSpec(s.passband_edge, s.stopband_edge, ripple_db, atten_db);
    };
    std::vector<FrmLevel> levels = plan.levels;
    for (auto& lv : levels) {
        lv.modal = rebudget(lv.modal);
        lv.mask_a = rebudget(lv.mask_a);
        lv.mask_c = rebudget(lv.mask_c);
    }
    return detail::make_plan(plan.target, std::move(levels), ripple_db, atten_db);
}

struct MaskPair {
    FirFilter mask_a;
    FirFilter mask_c;
};

struct FrmSubfilters {
    FirFilter modal;
    std::vector<MaskPair> masks;  ///< aligned with FrmPlan::levels
};

struct CostEntry {
    std::string name;
    std::size_t taps = 0;
    int multipliers = 0;
};

/// Per-subfilter multiplier table; total is the sum of the rows.
struct CostReport {
    std::vector<CostEntry> entries;

    [[nodiscard]] int total() const {
        int t = 0;
        for (const auto& e : entries) t += e.multipliers;
        return t;
    }
};

/// Cost rows in table order: modal, inner masks, outer masks.
inline CostReport subfilter_cost(const FrmSubfilters& sf) {
    CostReport c;
    c.entries.push_back({"modal", sf.modal.size(), multiplier_count(sf.modal)});
    for (std::size_t i = sf.masks.size(); i-- > 0;) {
        c.entries.push_back({mask_name(i, false), sf.masks[i].mask_a.size(), multiplier_count(sf.masks[i].mask_a)});
        c.entries.push_back({mask_name(i, true), sf.masks[i].mask_c.size(), multiplier_count(sf.masks[i].mask_c)});
    }
    return c;
}

struct FrmFilter {
    FrmPlan plan;
    FrmSubfilters subfilters;
    FirFilter composed;
    CostReport cost;
};

/// Flattened composition: the innermost modal filter is wrapped level by level, outward.
inline FrmFilter compose_frm(const FrmPlan& plan, const FrmSubfilters& sf) {
    if (sf.masks.size() != plan.levels.size()) throw std::invalid_argument("subfilter set does not match plan");
    FirFilter current = sf.modal;
    for (std::size_t i = plan.levels.size(); i-- > 0;)
        current = compose_one_stage(current, sf.masks[i].mask_a, sf.masks[i].mask_c,
                                    static_cast<std::size_t>(plan.levels[i].L));
    return {plan, sf, std::move(current), subfilter_cost(sf)};
}

/// Signal-domain evaluation of the masking dataflow: strided subfilters and a
/// shared delay line for the complementary branch, without flattening.
inline Signal filter_structural(const FrmFilter& f, const Signal& x) {
    const auto& levels = f.plan.levels;

    auto strided = [](const FirFilter& h, std::size_t stride) { return zero_stuff(h, stride); };
    auto run = [](const Signal& s, const FirFilter& h) { return convolve(s, Signal(h.coeffs())); };
    auto delayed = [](const Signal& s, std::int64_t d) { return Signal(s.samples, s.start_index + d); };

    // realize(i, s) applies the level-i modal filter F^(i) at z^s; F^(0) is the whole filter.
    auto realize = [&](auto&& self, std::size_t i, std::size_t stride, const Signal& in) -> Signal {
        if (i == levels.size()) return run(in, strided(f.subfilters.modal, stride));
        const auto L = static_cast<std::size_t>(levels[i].L);
        const auto& masks = f.subfilters.masks[i];
        const std::size_t n = std::max(masks.mask_a.size(), masks.mask_c.size());
        const Signal a = self(self, i + 1, stride * L, in);
        // Inner group delay in samples of the stride-(s L) line.
        std::size_t inner_len = f.subfilters.modal.size();
        for (std::size_t j = levels.size(); j-- > i + 1;) {
            const auto& mj = f.subfilters.masks[j];
            inner_len = static_cast<std::size_t>(levels[j].L) * (inner_len - 1) + std::max(mj.mask_a.size(), mj.mask_c.size());
        }
        const auto delay = static_cast<std::int64_t>(stride * L * (inner_len - 1) / 2);
        const Signal c = add(delayed(in, delay), scale(a, -1.0));
        return add(run(a, strided(center_pad(masks.mask_a, n), stride)), run(c, strided(center_pad(masks.mask_c, n), stride)));
    };
    return realize(realize, 0, 1, x);
}

struct FrmDesignOptions {
    PlanOptions plan;
    DesignOptions design;
    int max_budget_steps = 12;
    double ripple_tighten = 0.9;  ///< subfilter ripple multiplier when composed ripple fails
    double atten_step_db = 1.5;   ///< subfilter attenuation increment on any failure
};

class FrmDesignError : public std::runtime_error {
public:
    FrmDesignError(const std::string& what, ResponseMetrics best) : std::runtime_error(what), best_(best) {}
    [[nodiscard]] const ResponseMetrics& best() const noexcept { return best_; }

private:
    ResponseMetrics best_;
};

/// Designs every subfilter of `plan` with its stored budget and composes.
inline FrmFilter realize_plan(const FrmPlan& plan, const DesignOptions& opt = {}) {
    FrmSubfilters sf{design_lowpass(plan.modal, opt).filter, {}};
    for (const auto& lv : plan.levels)
        sf.masks.push_back({design_lowpass(lv.mask_a, opt).filter, design_lowpass(lv.mask_c, opt).filter});
    return compose_frm(plan, sf);
}

/// Realise and verify; subfilter budgets tighten until the composed filter
/// meets `target` on the analysis grid.
inline FrmFilter design_frm(const FrmPlan& initial, const FrmDesignOptions& opt = {}) {
    const FilterSpec& target = initial.target;
    double ripple = initial.subfilter_ripple_db;
    double atten = initial.subfilter_atten_db;
    ResponseMetrics last{};
    for (int step = 0; step <= opt.max_budget_steps; ++step) {
        auto f = realize_plan(with_budget(initial, ripple, atten), opt.design);
        const auto v = verify_spec(f.composed, target, opt.design.grid_size);
        if (v.passed) return f;
        last = v.metrics;
        // Composed passband ripple is mostly stopband leakage of the other branch,
        // so a ripple failure raises attenuation as well.
        if (v.metrics.passband_ripple_db > target.max_ripple_db) ripple *= opt.ripple_tighten;
        atten += opt.atten_step_db;
    }
    std::ostringstream msg;
    msg << "composed filter misses spec after " << opt.max_budget_steps << " budget steps (ripple "
        << last.passband_ripple_db << " dB, attenuation " << last.stopband_atten_db << " dB)";
    throw FrmDesignError(msg.str(), last);
}

inline FrmFilter design_frm(const FilterSpec& target, int stages, const FrmDesignOptions& opt = {}) {
    return design_frm(plan_frm(target, stages, opt.plan), opt);
}

}  // namespace vbfir
