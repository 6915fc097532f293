#pragma once

// JSON and CSV forms of the toolkit's values.
//
//   FirFilter   {"coeffs": [...], "symmetric": bool, "group_delay": number}
//   FilterSpec  {"passband_edge", "stopband_edge", "max_ripple_db", "min_atten_db"}
//   curves      CSV "omega_over_pi,magnitude_db", 12 significant digits
//
// Parsing is strict: unknown or missing keys raise std::invalid_argument.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <initializer_list>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vbfir/analysis.hpp"
#include "vbfir/core.hpp"
#include "vbfir/frm.hpp"
#include "vbfir/vbw.hpp"

namespace vbfir {

using json = nlohmann::json;

namespace detail {

inline void check_keys(const json& j, std::string_view what, std::initializer_list<std::string_view> required,
                       std::initializer_list<std::string_view> optional = {}) {
    if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (auto k : required) known = known || it.key() == k;
        for (auto k : optional) known = known || it.key() == k;
        if (!known) throw std::invalid_argument(std::string(what) + ": unknown key '" + it.key() + "'");
    }
    for (auto k : required)
        if (!j.contains(std::string(k)))
            throw std::invalid_argument(std::string(what) + ": missing key '" + std::string(k) + "'");
}

template <typename T>
T get_as(const json& j, std::string_view key, std::string_view what) {
    try {
        return j.at(std::string(key)).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad value for '" + std::string(key) + "'");
    }
}

}  // namespace detail

inline void to_json(json& j, const FirFilter& f) {
    j = json{{"coeffs", f.coeffs()}, {"symmetric", f.is_symmetric()}, {"group_delay", f.group_delay()}};
}

inline void from_json(const json& j, FirFilter& f) {
    detail::check_keys(j, "filter", {"coeffs", "symmetric", "group_delay"});
    auto coeffs = detail::get_as<std::vector<double>>(j, "coeffs", "filter");
    if (coeffs.empty()) throw std::invalid_argument("filter: empty filter");
    f = FirFilter(std::move(coeffs), detail::get_as<bool>(j, "symmetric", "filter"),
                  detail::get_as<double>(j, "group_delay", "filter"));
}

inline void to_json(json& j, const FilterSpec& s) {
    j = json{{"passband_edge", s.passband_edge},
             {"stopband_edge", s.stopband_edge},
             {"max_ripple_db", s.max_ripple_db},
             {"min_atten_db", s.min_atten_db}};
}

inline void from_json(const json& j, FilterSpec& s) {
    detail::check_keys(j, "spec", {"passband_edge", "stopband_edge", "max_ripple_db", "min_atten_db"});
    s = FilterSpec(detail::get_as<double>(j, "passband_edge", "spec"), detail::get_as<double>(j, "stopband_edge", "spec"),
                   detail::get_as<double>(j, "max_ripple_db", "spec"), detail::get_as<double>(j, "min_atten_db", "spec"));
}

inline void to_json(json& j, const ResponseMetrics& m) {
    j = json{{"passband_ripple_db", m.passband_ripple_db},
             {"stopband_atten_db", m.stopband_atten_db},
             {"measured_passband_edge", m.measured_passband_edge},
             {"measured_stopband_edge", m.measured_stopband_edge},
             {"grid_size", m.grid_size}};
}

inline void to_json(json& j, const CostReport& c) {
    j = json::object();
    for (const auto& e : c.entries) j[e.name] = json{{"taps", e.taps}, {"multipliers", e.multipliers}};
    j["total"] = c.total();
}

inline void to_json(json& j, const FrmLevel& lv) {
    j = json{{"L", lv.L}, {"case", to_string(lv.which)}, {"image", lv.image},
             {"modal", lv.modal}, {"mask_a", lv.mask_a}, {"mask_c", lv.mask_c}};
}

inline void from_json(const json& j, FrmLevel& lv) {
    detail::check_keys(j, "level", {"L", "case", "image", "modal", "mask_a", "mask_c"});
    lv.L = detail::get_as<int>(j, "L", "level");
    const auto c = detail::get_as<std::string>(j, "case", "level");
    if (c != "A" && c != "B") throw std::invalid_argument("level: case must be \"A\" or \"B\"");
    lv.which = c == "A" ? FrmCase::A : FrmCase::B;
    lv.image = detail::get_as<int>(j, "image", "level");
    lv.modal = j.at("modal").get<FilterSpec>();
    lv.mask_a = j.at("mask_a").get<FilterSpec>();
    lv.mask_c = j.at("mask_c").get<FilterSpec>();
    if (lv.L < 1) throw std::invalid_argument("level: L must be at least 1");
}

inline void to_json(json& j, const FrmPlan& p) {
    j = json{{"target", p.target},
             {"stages", p.stages()},
             {"levels", p.levels},
             {"modal", p.modal},
             {"subfilter_ripple_db", p.subfilter_ripple_db},
             {"subfilter_atten_db", p.subfilter_atten_db},
             {"estimated_multipliers", p.estimated_multipliers}};
}

inline void from_json(const json& j, FrmPlan& p) {
    detail::check_keys(j, "plan",
                       {"target", "stages", "levels", "modal", "subfilter_ripple_db", "subfilter_atten_db",
                        "estimated_multipliers"});
    p.target = j.at("target").get<FilterSpec>();
    p.levels = j.at("levels").get<std::vector<FrmLevel>>();
    if (detail::get_as<int>(j, "stages", "plan") != p.stages())
        throw std::invalid_argument("plan: stages does not match levels");
    p.modal = j.at("modal").get<FilterSpec>();
    p.subfilter_ripple_db = detail::get_as<double>(j, "subfilter_ripple_db", "plan");
    p.subfilter_atten_db = detail::get_as<double>(j, "subfilter_atten_db", "plan");
    p.estimated_multipliers = detail::get_as<int>(j, "estimated_multipliers", "plan");
}

inline void to_json(json& j, const FrmFilter& f) {
    json sub = json::object();
    sub["modal"] = f.subfilters.modal;
    for (std::size_t i = 0; i < f.subfilters.masks.size(); ++i) {
        sub[mask_name(i, false)] = f.subfilters.masks[i].mask_a;
        sub[mask_name(i, true)] = f.subfilters.masks[i].mask_c;
    }
    j = json{{"plan", f.plan}, {"subfilters", sub}, {"composed", f.composed}, {"cost", f.cost}};
}

/// Rebuilds the composition from plan and subfilters and checks it against the stored taps.
inline void from_json(const json& j, FrmFilter& f) {
    detail::check_keys(j, "frm filter", {"plan", "subfilters", "composed"}, {"cost"});
    const auto plan = j.at("plan").get<FrmPlan>();
    const auto& sub = j.at("subfilters");
    FrmSubfilters sf{sub.at("modal").get<FirFilter>(), {}};
    for (std::size_t i = 0; i < plan.levels.size(); ++i)
        sf.masks.push_back({sub.at(mask_name(i, false)).get<FirFilter>(), sub.at(mask_name(i, true)).get<FirFilter>()});
    if (sub.size() != 1 + 2 * plan.levels.size()) throw std::invalid_argument("frm filter: unexpected subfilter keys");
    f = compose_frm(plan, sf);
    const auto stored = j.at("composed").get<FirFilter>();
    if (stored.size() != f.composed.size()) throw std::invalid_argument("frm filter: composed taps do not match subfilters");
    const double scale = std::max(detail::max_abs(stored.coeffs()), 1e-300);
    for (std::size_t k = 0; k < stored.size(); ++k)
        if (std::abs(stored[k] - f.composed[k]) > 1e-9 * scale)
            throw std::invalid_argument("frm filter: composed taps do not match subfilters");
}

inline void to_json(json& j, const VbwConfig& c) { j = json{{"rf", c.rf}, {"n1", c.n1}, {"n2", c.n2}}; }

/// Channelizer run description. Every key is optional in the file; absent keys
/// take the built-in standards, orders, and fixed-filter spec.
struct ChannelPreset {
    FilterSpec fixed_spec = default_channelizer_spec();
    int stages = 2;
    double fixed_bandwidth = kChannelizerFixedBandwidth;
    std::vector<ChannelStandard> standards = default_standards();
    std::vector<ChannelOrders> orders = default_channel_orders();
};

inline void to_json(json& j, const ChannelPreset& p) {
    json rows = json::array();
    for (std::size_t k = 0; k < p.standards.size(); ++k)
        rows.push_back({{"name", p.standards[k].name},
                        {"bandwidth_mhz", p.standards[k].bandwidth_mhz},
                        {"normalized_bw", p.standards[k].normalized_bw},
                        {"n1", p.orders[k].n1},
                        {"n2", p.orders[k].n2}});
    j = json{{"fixed_spec", p.fixed_spec}, {"stages", p.stages}, {"fixed_bandwidth", p.fixed_bandwidth}, {"standards", rows}};
}

inline void from_json(const json& j, ChannelPreset& p) {
    detail::check_keys(j, "preset", {}, {"fixed_spec", "stages", "fixed_bandwidth", "standards"});
    p = ChannelPreset{};
    if (j.contains("fixed_spec")) p.fixed_spec = j.at("fixed_spec").get<FilterSpec>();
    if (j.contains("stages")) p.stages = detail::get_as<int>(j, "stages", "preset");
    if (j.contains("fixed_bandwidth")) p.fixed_bandwidth = detail::get_as<double>(j, "fixed_bandwidth", "preset");
    if (p.stages != 1 && p.stages != 2) throw std::invalid_argument("preset: stages must be 1 or 2");
    if (!(p.fixed_bandwidth > 0.0)) throw std::invalid_argument("preset: fixed_bandwidth must be positive");
    if (!j.contains("standards")) return;
    if (!j.at("standards").is_array() || j.at("standards").empty())
        throw std::invalid_argument("preset: standards must be a non-empty array");
    p.standards.clear();
    p.orders.clear();
    for (const auto& row : j.at("standards")) {
        detail::check_keys(row, "standard", {"name", "bandwidth_mhz", "n1", "n2"}, {"normalized_bw"});
        ChannelStandard s{detail::get_as<std::string>(row, "name", "standard"),
                          detail::get_as<double>(row, "bandwidth_mhz", "standard"), 0.0};
        s.normalized_bw = row.contains("normalized_bw") ? detail::get_as<double>(row, "normalized_bw", "standard")
                                                        : s.bandwidth_mhz / 10.0;
        if (!(s.bandwidth_mhz > 0.0)) throw std::invalid_argument("standard " + s.name + ": bandwidth must be positive");
        if (std::abs(s.normalized_bw - s.bandwidth_mhz / 10.0) > 1e-6)
            throw std::invalid_argument("standard " + s.name + ": normalized_bw must equal bandwidth_mhz / 10");
        ChannelOrders o{detail::get_as<int>(row, "n1", "standard"), detail::get_as<int>(row, "n2", "standard")};
        if (o.n1 < 1 || o.n2 < 1) throw std::invalid_argument("standard " + s.name + ": orders must be at least 1");
        p.standards.push_back(std::move(s));
        p.orders.push_back(o);
    }
}

/// One row per grid point, DC-normalised magnitude.
inline void write_response_csv(std::ostream& os, const FrequencyResponse& h) {
    const auto db = normalized_magnitude_db(h);
    os << "omega_over_pi,magnitude_db\n";
    os << std::setprecision(12);
    for (std::size_t k = 0; k < h.size(); ++k) os << h[k].omega / std::numbers::pi << ',' << std::max(db[k], -400.0) << '\n';
}

struct CurvePoint {
    double omega_over_pi;
    double magnitude_db;
};

inline std::vector<CurvePoint> read_response_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "omega_over_pi,magnitude_db")
        throw std::invalid_argument("curve: missing header omega_over_pi,magnitude_db");
    std::vector<CurvePoint> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("curve: malformed row");
        out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return out;
}

inline void write_cost_csv(std::ostream& os, const CostReport& c) {
    os << "subfilter,taps,multipliers\n";
    for (const auto& e : c.entries) os << e.name << ',' << e.taps << ',' << e.multipliers << '\n';
    os << "total,," << c.total() << '\n';
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace vbfir
