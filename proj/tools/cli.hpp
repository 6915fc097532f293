#pragma once

// vbfir command line: design, synth, channelize, analyze, cost.
//
// Each run collects its files in memory and writes them, plus manifest.json,
// only after every input has been parsed and every computation finished, so
// an input error leaves the output directory untouched.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vbfir/vbfir.hpp"

namespace vbfir::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kSpecNotMet = 1, kUsage = 2 };

inline constexpr const char* kOutputDirEnv = "VBFIR_OUTPUT_DIR";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string db2(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
}

inline std::string number_tag(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

inline std::string slug(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (c == '+')
            out += "plus";
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "standard" : out;
}

/// Files of one run, written together by commit().
class Outputs {
public:
    void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }
    void add_json(std::string name, const json& j) { add(std::move(name), j.dump(2) + "\n"); }

    void commit(const fs::path& dir, json manifest) const {
        json names = json::array();
        for (const auto& f : files_) names.push_back(f.first);
        manifest["outputs"] = names;
        fs::create_directories(dir);
        for (const auto& f : files_) write(dir / f.first, f.second);
        write(dir / "manifest.json", manifest.dump(2) + "\n");
    }

private:
    static void write(const fs::path& p, const std::string& content) {
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << content;
    }

    std::vector<std::pair<std::string, std::string>> files_;
};

/// Keys of a --config file; each key read is consumed and leftovers are rejected.
class ConfigFile {
public:
    ConfigFile() = default;
    explicit ConfigFile(const std::string& path) : base_(fs::path(path).parent_path()) {
        try {
            j_ = read_json_file(path);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (!j_.is_object()) throw UsageError(path + ": config must be a JSON object");
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw UsageError("config: bad value for '" + key + "'");
        }
        j_.erase(key);
    }

    template <typename T>
    void get(const std::string& key, std::optional<T>& out) {
        if (!j_.contains(key)) return;
        T v{};
        get(key, v);
        out = v;
    }

    /// Paths in a config file are relative to the file.
    void get_path(const std::string& key, std::string& out) {
        if (!j_.contains(key)) return;
        get(key, out);
        if (!out.empty() && fs::path(out).is_relative()) out = (base_ / out).string();
    }

    void finish() const {
        if (!j_.empty()) throw UsageError("config: unknown key '" + j_.begin().key() + "'");
    }

private:
    json j_ = json::object();
    fs::path base_;
};

struct SpecFlags {
    std::string file;
    std::optional<double> passband_edge, stopband_edge, ripple_db, atten_db;

    void add_to(CLI::App& app) {
        app.add_option("--spec", file, "FilterSpec JSON file");
        app.add_option("--passband-edge", passband_edge, "passband edge, fraction of pi");
        app.add_option("--stopband-edge", stopband_edge, "stopband edge, fraction of pi");
        app.add_option("--ripple-db", ripple_db, "maximum passband ripple (dB)");
        app.add_option("--atten-db", atten_db, "minimum stopband attenuation (dB)");
    }

    void read(ConfigFile& c) {
        c.get_path("spec", file);
        c.get("passband_edge", passband_edge);
        c.get("stopband_edge", stopband_edge);
        c.get("ripple_db", ripple_db);
        c.get("atten_db", atten_db);
    }

    [[nodiscard]] bool any_flag() const { return passband_edge || stopband_edge || ripple_db || atten_db; }

    [[nodiscard]] std::optional<FilterSpec> resolve() const {
        if (!file.empty() && any_flag()) throw UsageError("give either --spec or the edge/ripple/attenuation flags");
        try {
            if (!file.empty()) return read_json_file(file).get<FilterSpec>();
            if (!any_flag()) return std::nullopt;
            if (!(passband_edge && stopband_edge && ripple_db && atten_db))
                throw UsageError("--passband-edge, --stopband-edge, --ripple-db and --atten-db go together");
            return FilterSpec(*passband_edge, *stopband_edge, *ripple_db, *atten_db);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

/// A filter file holds either a bare FirFilter or a whole FrmFilter.
struct LoadedFilter {
    FirFilter filter;
    std::optional<FrmFilter> frm;
};

inline LoadedFilter load_filter(const std::string& path) {
    if (path.empty()) throw UsageError("--filter is required");
    try {
        const json j = read_json_file(path);
        if (j.is_object() && j.contains("plan")) {
            auto f = j.get<FrmFilter>();
            return {f.composed, std::move(f)};
        }
        return {j.get<FirFilter>(), std::nullopt};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline void check_grid_size(std::size_t g) {
    if (g < 1024 || (g & (g - 1)) != 0) throw UsageError("--grid-size must be a power of two >= 1024");
}

inline json base_manifest(const std::string& command, std::size_t grid) {
    return json{{"tool", "vbfir"}, {"version", kVersion}, {"command", command}, {"grid_size", grid}};
}

inline std::string response_csv(const FirFilter& f, std::size_t grid) {
    std::ostringstream s;
    write_response_csv(s, freq_response(f, grid));
    return s.str();
}

inline void print_metrics(std::ostream& out, const ResponseMetrics& m) {
    out << "  passband ripple     " << db2(m.passband_ripple_db) << " dB\n"
        << "  stopband atten      " << db2(m.stopband_atten_db) << " dB\n";
}

inline void print_cost(std::ostream& out, const CostReport& c) {
    for (const auto& e : c.entries) out << "  " << std::left << std::setw(10) << e.name << std::right << std::setw(6)
                                        << e.taps << " taps " << std::setw(5) << e.multipliers << " mult\n";
    out << "  total               " << std::setw(5) << c.total() << " mult\n";
}

// ---------------------------------------------------------------- design

struct DesignArgs {
    SpecFlags spec;
    int stages = 2;
    std::string search = "sequential";
    std::size_t grid_size = kDefaultGridSize;
    std::string output_dir = "out";
    std::string config;

    void read(ConfigFile& c) {
        spec.read(c);
        c.get("stages", stages);
        c.get("search", search);
        c.get("grid_size", grid_size);
        c.get_path("output_dir", output_dir);
    }
};

inline int run_design(const DesignArgs& a, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    const auto spec = a.spec.resolve();
    if (!spec) throw UsageError("design needs a spec (--spec FILE or the four spec flags)");
    if (a.stages != 1 && a.stages != 2) throw UsageError("--stages must be 1 or 2");
    if (a.search != "sequential" && a.search != "joint") throw UsageError("--search must be sequential or joint");
    check_grid_size(a.grid_size);

    FrmDesignOptions opt;
    opt.plan.search = a.search == "joint" ? PlanSearch::joint : PlanSearch::sequential;
    opt.design.grid_size = a.grid_size;

    FrmFilter f;
    try {
        f = design_frm(*spec, a.stages, opt);
    } catch (const FrmDesignError& e) {
        err << "error: " << e.what() << "\nbest achieved:\n";
        print_metrics(err, e.best());
        return kSpecNotMet;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kSpecNotMet;
    }
    const auto m = measure(f.composed, *spec, a.grid_size);

    Outputs o;
    o.add_json("fixed_filter.json", f);
    o.add("response.csv", response_csv(f.composed, a.grid_size));
    std::ostringstream cost;
    write_cost_csv(cost, f.cost);
    o.add("cost.csv", cost.str());
    o.add_json("metrics.json", m);
    auto manifest = base_manifest("design", a.grid_size);
    manifest["inputs"] = {{"spec", *spec}, {"stages", a.stages}, {"search", a.search}};
    o.commit(out_dir, manifest);

    out << "design: " << f.plan.stages() << "-level masking";
    if (f.plan.stages() > 0) out << ", L1 = " << f.plan.L1();
    if (f.plan.stages() > 1) out << ", L2 = " << f.plan.L2();
    out << ", " << f.composed.size() << " composed taps\n";
    print_metrics(out, m);
    print_cost(out, f.cost);
    return kOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
    std::string filter;
    std::vector<double> rf;
    int n1 = 1;
    int n2 = 1;
    SpecFlags spec;
    std::size_t grid_size = kDefaultGridSize;
    std::string output_dir = "out";
    std::string config;

    void read(ConfigFile& c) {
        c.get_path("filter", filter);
        c.get("rf", rf);
        c.get("n1", n1);
        c.get("n2", n2);
        spec.read(c);
        c.get("grid_size", grid_size);
        c.get_path("output_dir", output_dir);
    }
};

inline int run_synth(const SynthArgs& a, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    const auto loaded = load_filter(a.filter);
    auto spec = a.spec.resolve();
    if (!spec && loaded.frm) spec = loaded.frm->plan.target;
    if (!spec) throw UsageError("a bare filter file needs a spec for the measurements");
    if (a.rf.empty()) throw UsageError("--rf is required");
    check_grid_size(a.grid_size);
    std::vector<VbwConfig> configs;
    try {
        for (double rf : a.rf) configs.emplace_back(rf, a.n1, a.n2);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    Outputs o;
    json runs = json::array();
    for (const auto& c : configs) {
        FirFilter g;
        try {
            g = synthesize(loaded.filter, c);
        } catch (const std::domain_error& e) {
            err << "error: rf = " << number_tag(c.rf) << ": " << e.what() << "\n";
            return kSpecNotMet;
        }
        const auto target = scaled_spec(*spec, c.rf);
        const auto m = measure(g, target, a.grid_size);
        const std::string stem = "synth_rf" + number_tag(c.rf);
        o.add_json(stem + ".json", g);
        o.add(stem + ".csv", response_csv(g, a.grid_size));
        o.add_json(stem + "_metrics.json", json{{"config", c},
                                                {"spec", target},
                                                {"metrics", m},
                                                {"src_multipliers", vbw_src_multipliers(c)},
                                                {"taps", g.size()}});
        runs.push_back(c);
        out << "rf " << number_tag(c.rf) << " (n1 " << c.n1 << ", n2 " << c.n2 << "): " << g.size()
            << " taps, passband edge " << std::setprecision(4) << m.measured_passband_edge << " pi, ripple "
            << db2(m.passband_ripple_db) << " dB, attenuation " << db2(m.stopband_atten_db) << " dB\n";
    }
    auto manifest = base_manifest("synth", a.grid_size);
    manifest["inputs"] = {{"filter", a.filter}, {"spec", *spec}, {"runs", runs}};
    o.commit(out_dir, manifest);
    return kOk;
}

// ---------------------------------------------------------------- channelize

struct ChannelizeArgs {
    std::string preset;
    std::string fixed_filter;
    std::size_t grid_size = kDefaultGridSize;
    std::string output_dir = "out";
    std::string config;

    void read(ConfigFile& c) {
        c.get_path("preset", preset);
        c.get_path("fixed_filter", fixed_filter);
        c.get("grid_size", grid_size);
        c.get_path("output_dir", output_dir);
    }
};

inline json reference_rows(const auto& table) {
    json rows = json::array();
    for (const auto& r : table)
        rows.push_back({{"method", r.method}, {"fixed_filter", r.fixed_filter}, {"src", r.src}, {"total", r.total()}});
    return rows;
}

inline int run_channelize(const ChannelizeArgs& a, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    ChannelPreset preset;
    if (!a.preset.empty()) {
        try {
            preset = read_json_file(a.preset).get<ChannelPreset>();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    check_grid_size(a.grid_size);

    FrmFilter fixed;
    if (!a.fixed_filter.empty()) {
        auto loaded = load_filter(a.fixed_filter);
        if (!loaded.frm) throw UsageError(a.fixed_filter + ": channelize needs a masking filter file from `design`");
        fixed = std::move(*loaded.frm);
    } else {
        FrmDesignOptions opt;
        opt.design.grid_size = a.grid_size;
        try {
            fixed = design_frm(preset.fixed_spec, preset.stages, opt);
        } catch (const std::runtime_error& e) {
            err << "error: fixed filter: " << e.what() << "\n";
            return kSpecNotMet;
        }
    }

    const auto results = channelizer(preset.standards, fixed, preset.orders, preset.fixed_bandwidth, a.grid_size);

    Outputs o;
    o.add_json("fixed_filter.json", fixed);
    json rows = json::array();
    std::ostringstream csv;
    csv << "standard,bandwidth_mhz,normalized_bw,rf,n1,n2,src_multipliers,taps,passband_ripple_db,stopband_atten_db,"
           "measured_passband_edge,error\n";
    csv << std::setprecision(12);
    int max_src = 0;
    bool all_ok = true;
    std::set<std::string> used;
    for (const auto& r : results) {
        std::string s = slug(r.standard.name);
        for (int n = 2; used.count(s) != 0; ++n) s = slug(r.standard.name) + "_" + std::to_string(n);
        used.insert(s);
        json row{{"name", r.standard.name},
                 {"bandwidth_mhz", r.standard.bandwidth_mhz},
                 {"normalized_bw", r.standard.normalized_bw},
                 {"rf", r.config.rf},
                 {"n1", r.config.n1},
                 {"n2", r.config.n2},
                 {"src_multipliers", r.src_multipliers}};
        if (r.ok()) {
            row["taps"] = r.filter.size();
            row["metrics"] = r.metrics;
            row["files"] = {"channels/" + s + ".json", "channels/" + s + ".csv"};
            o.add_json("channels/" + s + ".json", r.filter);
            o.add("channels/" + s + ".csv", response_csv(r.filter, a.grid_size));
            max_src = std::max(max_src, r.src_multipliers);
        } else {
            row["error"] = r.error;
            all_ok = false;
        }
        rows.push_back(row);
        csv << '"' << r.standard.name << "\"," << r.standard.bandwidth_mhz << ',' << r.standard.normalized_bw << ','
            << r.config.rf << ',' << r.config.n1 << ',' << r.config.n2 << ',' << r.src_multipliers << ',';
        if (r.ok())
            csv << r.filter.size() << ',' << r.metrics.passband_ripple_db << ',' << r.metrics.stopband_atten_db << ','
                << r.metrics.measured_passband_edge << ",\n";
        else
            csv << ",,,,\"" << r.error << "\"\n";
    }

    const json summary{{"fixed_filter_multipliers", fixed.cost.total()},
                       {"max_src_multipliers", max_src},
                       {"total", fixed.cost.total() + max_src}};
    o.add_json("report.json", json{{"fixed_spec", fixed.plan.target},
                                   {"fixed_cost", fixed.cost},
                                   {"standards", rows},
                                   {"summary", summary},
                                   {"reference", reference_rows(reference::kChannelizerCosts)}});
    o.add("report.csv", csv.str());
    auto manifest = base_manifest("channelize", a.grid_size);
    manifest["inputs"] = {{"preset", preset}, {"fixed_filter", a.fixed_filter}};
    o.commit(out_dir, manifest);

    out << "fixed filter: " << fixed.cost.total() << " multipliers\n";
    for (const auto& r : results) {
        out << "  " << std::left << std::setw(28) << r.standard.name << std::right << " rf " << std::fixed
            << std::setprecision(4) << r.config.rf << std::defaultfloat << "  src " << std::setw(2) << r.src_multipliers;
        if (r.ok())
            out << "  ripple " << db2(r.metrics.passband_ripple_db) << " dB  atten " << db2(r.metrics.stopband_atten_db)
                << " dB\n";
        else
            out << "  FAILED: " << r.error << "\n";
    }
    out << "total: " << summary["total"].get<int>() << " multipliers (fixed " << fixed.cost.total() << " + src "
        << max_src << ")\n";
    for (const auto& r : reference::kChannelizerCosts)
        out << "  reference " << r.method << ": " << r.total() << "\n";
    return all_ok ? kOk : kSpecNotMet;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string filter;
    SpecFlags spec;
    std::size_t grid_size = kDefaultGridSize;
    std::string output_dir = "out";
    std::string config;

    void read(ConfigFile& c) {
        c.get_path("filter", filter);
        spec.read(c);
        c.get("grid_size", grid_size);
        c.get_path("output_dir", output_dir);
    }
};

inline int run_analyze(const AnalyzeArgs& a, const fs::path& out_dir, std::ostream& out, std::ostream&) {
    const auto loaded = load_filter(a.filter);
    auto spec = a.spec.resolve();
    if (!spec && loaded.frm) spec = loaded.frm->plan.target;
    if (!spec) throw UsageError("a bare filter file needs a spec");
    check_grid_size(a.grid_size);

    Verification v;
    try {
        v = verify_spec(loaded.filter, *spec, a.grid_size);
    } catch (const std::domain_error& e) {
        throw UsageError(a.filter + ": " + e.what());
    }
    Outputs o;
    o.add("response.csv", response_csv(loaded.filter, a.grid_size));
    o.add_json("metrics.json", json{{"spec", *spec}, {"metrics", v.metrics}, {"passed", v.passed}});
    auto manifest = base_manifest("analyze", a.grid_size);
    manifest["inputs"] = {{"filter", a.filter}, {"spec", *spec}};
    o.commit(out_dir, manifest);

    out << (v.passed ? "spec met" : "spec NOT met") << " (" << loaded.filter.size() << " taps)\n";
    print_metrics(out, v.metrics);
    return v.passed ? kOk : kSpecNotMet;
}

// ---------------------------------------------------------------- cost

struct CostArgs {
    std::string filter;
    std::optional<int> n1, n2;
    std::string output_dir = "out";
    std::string config;

    void read(ConfigFile& c) {
        c.get_path("filter", filter);
        c.get("n1", n1);
        c.get("n2", n2);
        c.get_path("output_dir", output_dir);
    }
};

inline int run_cost(const CostArgs& a, const fs::path& out_dir, std::ostream& out, std::ostream&) {
    if (a.filter.empty() && !a.n1 && !a.n2) throw UsageError("cost needs --filter and/or --n1/--n2");
    if (a.n1.has_value() != a.n2.has_value()) throw UsageError("--n1 and --n2 go together");
    if (a.n1 && (*a.n1 < 1 || *a.n2 < 1)) throw UsageError("pascal orders must be at least 1");

    CostReport fixed;
    if (!a.filter.empty()) {
        auto loaded = load_filter(a.filter);
        if (loaded.frm)
            fixed = loaded.frm->cost;
        else
            fixed.entries.push_back({"filter", loaded.filter.size(), multiplier_count(loaded.filter)});
    }
    const int src = a.n1 ? src_multiplier_count(*a.n1) + src_multiplier_count(*a.n2) : 0;

    json j{{"fixed_filter", fixed}, {"total", fixed.total() + src},
           {"reference", reference_rows(reference::kVariableBandwidthCosts)}};
    if (a.n1)
        j["src"] = {{"n1", *a.n1},
                    {"n2", *a.n2},
                    {"first", src_multiplier_count(*a.n1)},
                    {"second", src_multiplier_count(*a.n2)},
                    {"total", src}};
    std::ostringstream csv;
    write_cost_csv(csv, fixed);
    if (a.n1) csv << "src," << "," << src << '\n';

    Outputs o;
    o.add_json("cost.json", j);
    o.add("cost.csv", csv.str());
    auto manifest = base_manifest("cost", kDefaultGridSize);
    manifest["inputs"] = {{"filter", a.filter}};
    if (a.n1) {
        manifest["inputs"]["n1"] = *a.n1;
        manifest["inputs"]["n2"] = *a.n2;
    }
    o.commit(out_dir, manifest);

    if (!fixed.entries.empty()) print_cost(out, fixed);
    if (a.n1) out << "  src (n1 " << *a.n1 << ", n2 " << *a.n2 << ")      " << std::setw(5) << src << " mult\n";
    out << "total " << fixed.total() + src << " multipliers\n";
    for (const auto& r : reference::kVariableBandwidthCosts)
        out << "  reference " << r.method << ": " << r.total() << "\n";
    return kOk;
}

// ---------------------------------------------------------------- entry

inline fs::path output_dir_for(const std::string& flag) {
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return flag;
}

template <typename Args>
int dispatch(Args& a, int (*run)(const Args&, const fs::path&, std::ostream&, std::ostream&), std::ostream& out,
             std::ostream& err) {
    if (!a.config.empty()) {
        if (!fs::exists(a.config)) throw UsageError("config file not found: " + a.config);
        ConfigFile c(a.config);
        a.read(c);
        c.finish();
    }
    return run(a, output_dir_for(a.output_dir), out, err);
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Variable-bandwidth FIR filter toolkit", "vbfir"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    DesignArgs design;
    auto* d = app.add_subcommand("design", "Design a masking lowpass and write it with its response and cost");
    design.spec.add_to(*d);
    d->add_option("--stages", design.stages, "masking levels, 1 or 2")->capture_default_str();
    d->add_option("--search", design.search, "planner search: sequential or joint")->capture_default_str();
    d->add_option("--grid-size", design.grid_size, "analysis grid points")->capture_default_str();
    d->add_option("--output-dir", design.output_dir)->capture_default_str();
    d->add_option("--config", design.config, "JSON file overriding the flags");

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Synthesize variable-bandwidth filters from a fixed filter");
    s->add_option("--filter", synth.filter, "fixed filter JSON (from design, or a bare filter)");
    s->add_option("--rf", synth.rf, "reduction factor; repeat for a sweep");
    s->add_option("--n1", synth.n1, "Pascal order of the first converter")->capture_default_str();
    s->add_option("--n2", synth.n2, "Pascal order of the second converter")->capture_default_str();
    synth.spec.add_to(*s);
    s->add_option("--grid-size", synth.grid_size)->capture_default_str();
    s->add_option("--output-dir", synth.output_dir)->capture_default_str();
    s->add_option("--config", synth.config, "JSON file overriding the flags");

    ChannelizeArgs chan;
    auto* c = app.add_subcommand("channelize", "Per-standard channel filters from one fixed filter");
    c->add_option("--preset", chan.preset, "channelizer preset JSON (default: built-in standards)");
    c->add_option("--fixed-filter", chan.fixed_filter, "reuse a fixed filter from design instead of designing one");
    c->add_option("--grid-size", chan.grid_size)->capture_default_str();
    c->add_option("--output-dir", chan.output_dir)->capture_default_str();
    c->add_option("--config", chan.config, "JSON file overriding the flags");

    AnalyzeArgs an;
    auto* z = app.add_subcommand("analyze", "Measure a filter against a spec");
    z->add_option("--filter", an.filter, "filter JSON");
    an.spec.add_to(*z);
    z->add_option("--grid-size", an.grid_size)->capture_default_str();
    z->add_option("--output-dir", an.output_dir)->capture_default_str();
    z->add_option("--config", an.config, "JSON file overriding the flags");

    CostArgs cost;
    auto* k = app.add_subcommand("cost", "Multiplier table for a filter and/or a converter pair");
    k->add_option("--filter", cost.filter, "filter JSON");
    k->add_option("--n1", cost.n1);
    k->add_option("--n2", cost.n2);
    k->add_option("--output-dir", cost.output_dir)->capture_default_str();
    k->add_option("--config", cost.config, "JSON file overriding the flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (d->parsed()) return dispatch(design, run_design, out, err);
        if (s->parsed()) return dispatch(synth, run_synth, out, err);
        if (c->parsed()) return dispatch(chan, run_channelize, out, err);
        if (z->parsed()) return dispatch(an, run_analyze, out, err);
        return dispatch(cost, run_cost, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kSpecNotMet;
    }
}

}  // namespace vbfir::cli
