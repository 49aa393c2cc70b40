#include "retscale/commands.hpp"

#include "retscale/empirical.hpp"
#include "retscale/errors.hpp"
#include "retscale/intervals.hpp"
#include "retscale/io.hpp"
#include "retscale/parallel.hpp"
#include "retscale/seeds.hpp"
#include "retscale/volatility.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

namespace retscale {

namespace fsys = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ValidationError("config: " + where + " " + what);
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "must be a number");
    return j.get<double>();
}

std::vector<double> get_number_array(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "must be a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) bad(where, "must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<double> get_positive_array(const json& j, const std::string& where) {
    auto out = get_number_array(j, where);
    for (double v : out)
        if (!std::isfinite(v) || v <= 0.0) bad(where, "entries must be positive");
    return out;
}

void require_ascending(const std::vector<double>& v, const std::string& where) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) bad(where, "entries must be strictly ascending");
}

std::uint64_t get_u64(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    bad(where, "must be a nonnegative integer");
}

SimulationPlan plan_from_json(const json& j, const std::string& where, SimulationPlan plan) {
    if (!j.is_object()) bad(where, "must be an object");
    for (const auto& [key, value] : j.items()) {
        const std::string kw = where + "." + key;
        if (key == "gamma") {
            plan.gamma = get_number(value, kw);
        } else if (key == "sizes") {
            if (!value.is_array() || value.empty()) bad(kw, "must be a nonempty array");
            plan.sizes.clear();
            for (const auto& e : value) plan.sizes.push_back(get_u64(e, kw));
        } else if (key == "resolutions") {
            auto r = get_number_array(value, kw);
            for (double v : r)
                if (!std::isfinite(v) || v < 0.0) bad(kw, "entries must be 0 or positive");
            plan.resolutions = std::move(r);
        } else if (key == "n_realizations") {
            auto n = get_u64(value, kw);
            if (n < 1 || n > 1000000) bad(kw, "must be between 1 and 1000000");
            plan.n_realizations = static_cast<int>(n);
        } else if (key == "targets") {
            plan.target_mean_taus = get_positive_array(value, kw);
            require_ascending(plan.target_mean_taus, kw);
        } else if (key == "m_values") {
            plan.m_values = get_positive_array(value, kw);
        } else {
            bad(kw, "is not a recognized key");
        }
    }
    return plan;
}

json plan_to_json(const SimulationPlan& p) {
    json j;
    j["gamma"] = p.gamma;
    j["m_values"] = p.m_values;
    j["n_realizations"] = p.n_realizations;
    j["resolutions"] = p.resolutions;
    j["sizes"] = p.sizes;
    j["targets"] = p.target_mean_taus;
    return j;
}

std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

struct InstrumentFile {
    std::string id;
    fsys::path path;
};

std::vector<InstrumentFile> discover_inputs(const RunConfig& c, bool skip_profile_sidecars) {
    if (c.inputs.empty()) throw ValidationError("no input paths configured");
    std::vector<InstrumentFile> files;
    for (const auto& input : c.inputs) {
        fsys::path p(input);
        if (fsys::is_directory(p)) {
            for (const auto& ent : fsys::directory_iterator(p))
                if (ent.is_regular_file() && ent.path().extension() == ".csv")
                    files.push_back({ent.path().stem().string(), ent.path()});
        } else if (fsys::is_regular_file(p)) {
            files.push_back({p.stem().string(), p});
        } else {
            throw ValidationError("input path not found: " + input);
        }
    }
    if (skip_profile_sidecars)
        std::erase_if(files,
                      [](const InstrumentFile& f) { return f.id.ends_with("_profile"); });
    if (!c.instruments.empty()) {
        std::set<std::string> wanted(c.instruments.begin(), c.instruments.end());
        std::erase_if(files,
                      [&](const InstrumentFile& f) { return !wanted.contains(f.id); });
        for (const auto& f : files) wanted.erase(f.id);
        if (!wanted.empty())
            throw ValidationError("instrument '" + *wanted.begin() + "' not found among inputs");
    }
    std::sort(files.begin(), files.end(),
              [](const InstrumentFile& a, const InstrumentFile& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < files.size(); ++i)
        if (files[i].id == files[i - 1].id)
            throw ValidationError("duplicate instrument id: " + files[i].id);
    if (files.empty()) throw ValidationError("no instruments found");
    return files;
}

std::ofstream open_output(const fsys::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw DataError("cannot open output file: " + p.string());
    return os;
}

// Runs the work items a batch at a time and hands finished slots to the
// single collector in index order, so output is deterministic and memory
// stays bounded by the batch size.
template <typename Work, typename Collect>
void process_batched(std::size_t count, Work&& work, Collect&& collect) {
    const std::size_t batch = std::max<std::size_t>(1, max_threads());
    for (std::size_t start = 0; start < count; start += batch) {
        const std::size_t end = std::min(count, start + batch);
        parallel_for(end - start, [&](std::size_t i) { work(start + i); });
        for (std::size_t i = start; i < end; ++i) collect(i);
    }
}

class ManifestWriter {
  public:
    ManifestWriter(const RunConfig& c, std::string command)
        : config_(&c), command_(std::move(command)) {
        extra_ = json::object();
    }

    void add_output(const fsys::path& p) {
        outputs_.push_back(fsys::relative(p, config_->out_dir).generic_string());
    }
    void add_skip(const std::string& instrument, const std::string& reason) {
        skipped_.push_back({{"instrument", instrument}, {"reason", reason}});
    }
    void add_warning(const std::string& instrument, const std::string& detail) {
        warnings_.push_back({{"detail", detail}, {"instrument", instrument}});
    }
    json& extra() { return extra_; }

    void write() {
        json m;
        m["command"] = command_;
        m["config"] = config_to_json(*config_);
        m["config_hash"] = config_hash(*config_);
        std::sort(outputs_.begin(), outputs_.end());
        m["outputs"] = outputs_;
        m["seed"] = config_->seed;
        m["skipped"] = skipped_;
        m["version"] = std::string(kVersion);
        m["warnings"] = warnings_;
        for (const auto& [key, value] : extra_.items()) m[key] = value;
        auto os = open_output(fsys::path(config_->out_dir) / (command_ + "_manifest.json"));
        os << m.dump(2) << '\n';
    }

  private:
    const RunConfig* config_;
    std::string command_;
    std::vector<std::string> outputs_;
    json skipped_ = json::array();
    json warnings_ = json::array();
    json extra_;
};

} // namespace

std::vector<double> default_sweep_targets() {
    std::vector<double> t;
    t.reserve(12);
    const double llo = std::log(10.0), lhi = std::log(100.0);
    for (int k = 1; k <= 12; ++k) t.push_back(std::exp(llo + (lhi - llo) * k / 12.0));
    t.back() = 100.0;
    return t;
}

SimulationPlan default_discreteness_plan() {
    SimulationPlan p;
    p.gamma = 0.3;
    p.sizes = {200000};
    p.resolutions = {0.0, 1.0, 5.0, 10.0};
    p.n_realizations = 100;
    p.target_mean_taus = {3, 5, 10, 15, 20, 30, 50, 70, 100, 200, 300, 500, 1000};
    p.m_values = {0.5, 2.0};
    return p;
}

SimulationPlan default_finite_size_plan() {
    SimulationPlan p;
    p.gamma = 0.3;
    p.sizes = {20000, 200000, 2000000};
    p.resolutions = {0.0};
    p.n_realizations = 500;
    p.target_mean_taus = default_sweep_targets();
    p.m_values = {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    return p;
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");
    RunConfig c;
    c.sweep_targets = default_sweep_targets();

    for (const auto& [key, value] : j.items()) {
        if (key == "inputs") {
            if (value.is_string()) {
                c.inputs = {value.get<std::string>()};
            } else if (value.is_array()) {
                for (const auto& e : value) {
                    if (!e.is_string()) bad("inputs", "must contain only strings");
                    c.inputs.push_back(e.get<std::string>());
                }
            } else {
                bad("inputs", "must be a string or an array of strings");
            }
        } else if (key == "instruments") {
            if (!value.is_array()) bad("instruments", "must be an array of strings");
            for (const auto& e : value) {
                if (!e.is_string()) bad("instruments", "must contain only strings");
                c.instruments.push_back(e.get<std::string>());
            }
        } else if (key == "targets") {
            c.sweep_targets = get_positive_array(value, "targets");
            require_ascending(c.sweep_targets, "targets");
        } else if (key == "fit_range") {
            auto r = get_number_array(value, "fit_range");
            if (r.size() != 2 || !(r[0] >= 0.0) || !(r[0] < r[1]))
                bad("fit_range", "must be [low, high] with 0 <= low < high");
            c.fit_low = r[0];
            c.fit_high = r[1];
        } else if (key == "m_values") {
            c.m_values = get_positive_array(value, "m_values");
        } else if (key == "q_values") {
            c.q_values = get_positive_array(value, "q_values");
            require_ascending(c.q_values, "q_values");
        } else if (key == "min_exceedances") {
            auto n = get_u64(value, "min_exceedances");
            if (n < 2) bad("min_exceedances", "must be at least 2");
            c.min_exceedances = static_cast<std::int64_t>(n);
        } else if (key == "surrogate") {
            if (!value.is_object()) bad("surrogate", "must be an object");
            for (const auto& [sk, sv] : value.items()) {
                if (sk == "iterations") {
                    auto n = get_u64(sv, "surrogate.iterations");
                    if (n < 1 || n > 100000) bad("surrogate.iterations", "must be in [1, 100000]");
                    c.surrogate.iterations = static_cast<int>(n);
                } else if (sk == "spectrum_tolerance") {
                    double t = get_number(sv, "surrogate.spectrum_tolerance");
                    if (!(t >= 0.0)) bad("surrogate.spectrum_tolerance", "must be nonnegative");
                    c.surrogate.spectrum_tolerance = t;
                } else {
                    bad("surrogate." + sk, "is not a recognized key");
                }
            }
        } else if (key == "plan") {
            if (!value.is_object()) bad("plan", "must be an object");
            for (const auto& [pk, pv] : value.items()) {
                if (pk == "discreteness") {
                    c.discreteness_plan =
                        plan_from_json(pv, "plan.discreteness", default_discreteness_plan());
                } else if (pk == "finite_size") {
                    c.finite_size_plan =
                        plan_from_json(pv, "plan.finite_size", default_finite_size_plan());
                } else {
                    bad("plan." + pk, "is not a recognized key");
                }
            }
        } else if (key == "out") {
            if (!value.is_string() || value.get<std::string>().empty())
                bad("out", "must be a nonempty string");
            c.out_dir = value.get<std::string>();
        } else if (key == "seed") {
            c.seed = get_u64(value, "seed");
        } else {
            bad(key, "is not a recognized key");
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["fit_range"] = {c.fit_low, c.fit_high};
    j["inputs"] = c.inputs;
    j["instruments"] = c.instruments;
    j["m_values"] = c.m_values;
    j["min_exceedances"] = c.min_exceedances;
    j["out"] = c.out_dir;
    json plan = json::object();
    if (c.discreteness_plan) plan["discreteness"] = plan_to_json(*c.discreteness_plan);
    if (c.finite_size_plan) plan["finite_size"] = plan_to_json(*c.finite_size_plan);
    j["plan"] = plan;
    j["q_values"] = c.q_values;
    j["seed"] = c.seed;
    j["surrogate"] = {{"iterations", c.surrogate.iterations},
                      {"spectrum_tolerance", c.surrogate.spectrum_tolerance}};
    j["targets"] = c.sweep_targets;
    j["with_surrogate"] = c.with_surrogate;
    return j;
}

std::string config_hash(const RunConfig& c) {
    return hex16(fnv1a64(config_to_json(c).dump()));
}

void run_volatility(const RunConfig& c) {
    const auto files = discover_inputs(c, false);
    const OutputHeader header{c.seed, config_hash(c)};
    const fsys::path dir = fsys::path(c.out_dir) / "volatility";
    fsys::create_directories(dir);

    ManifestWriter manifest(c, "volatility");
    json instruments = json::array();
    std::vector<std::optional<VolatilitySeries>> slots(files.size());

    process_batched(
        files.size(),
        [&](std::size_t i) {
            std::ifstream in(files[i].path);
            if (!in) throw DataError("cannot open " + files[i].path.string());
            try {
                slots[i] = compute_volatility(load_prices(in, files[i].id));
            } catch (const DataError& e) {
                throw DataError(files[i].path.string() + ": " + e.what());
            }
        },
        [&](std::size_t i) {
            const VolatilitySeries& v = *slots[i];
            const fsys::path main_path = dir / (files[i].id + ".csv");
            {
                auto os = open_output(main_path);
                write_volatility_csv(os, v, header);
            }
            const fsys::path prof_path = dir / (files[i].id + "_profile.csv");
            {
                auto os = open_output(prof_path);
                write_profile_csv(os, v.seasonal_profile, header);
            }
            manifest.add_output(main_path);
            manifest.add_output(prof_path);
            instruments.push_back({{"id", files[i].id},
                                   {"normalization_sd", v.normalization_sd},
                                   {"points", v.values.size()}});
            slots[i].reset();
        });

    manifest.extra()["instruments"] = instruments;
    manifest.write();
}

namespace {

struct AnalyzeBundle {
    bool skipped = false;
    std::string skip_reason;
    ThresholdSweep sweep;
    std::vector<MomentCurve> curves;
    std::vector<AlphaEstimate> alphas;
    std::vector<EmpiricalCdf> survivals;
    std::optional<CollapseDeviation> collapse;
    std::vector<std::string> notes;
};

AnalyzeBundle analyze_series(std::span<const double> values, const RunConfig& c,
                             CurveSource source) {
    AnalyzeBundle b;
    b.sweep = sweep_thresholds(values, c.sweep_targets, c.min_exceedances);
    if (b.sweep.entries.size() < 3) {
        b.skipped = true;
        b.skip_reason = "only " + std::to_string(b.sweep.entries.size()) + " of " +
                        std::to_string(c.sweep_targets.size()) +
                        " sweep targets achievable; at least 3 needed";
        return b;
    }

    for (double m : c.m_values) {
        MomentCurve curve;
        curve.m = m;
        curve.source = source;
        for (const auto& e : b.sweep.entries) {
            const double mu = moment(e, m);
            if (!std::isfinite(mu) || !(mu > 0.0)) {
                b.notes.push_back("m=" + format_double(m) + ": dropped point at mean_tau=" +
                                  format_double(e.mean_tau) + " (moment overflow)");
                continue;
            }
            curve.mean_taus.push_back(e.mean_tau);
            curve.moments.push_back(mu);
        }
        try {
            b.alphas.push_back(fit_alpha(curve, c.fit_low, c.fit_high));
        } catch (const ValidationError& e) {
            b.skipped = true;
            b.skip_reason = e.what();
            return b;
        }
        b.curves.push_back(std::move(curve));
    }

    for (double q : c.q_values) {
        IntervalSeries s = extract_intervals(values, q);
        if (s.empty()) {
            b.notes.push_back("q=" + format_double(q) +
                              ": fewer than 2 exceedances, no survival curve");
            continue;
        }
        b.survivals.push_back(empirical_survival(scaled_intervals(s), q));
    }
    if (b.survivals.size() >= 2) {
        try {
            b.collapse = collapse_deviation(b.survivals);
        } catch (const DataError& e) {
            b.notes.push_back(e.what());
        }
    }
    return b;
}

json collapse_to_json(const CollapseDeviation& d, const std::string& instrument,
                      const std::string& source, const OutputHeader& header) {
    json j;
    j["config_hash"] = header.config_hash;
    j["grid"] = d.grid;
    j["instrument"] = instrument;
    j["mean_trend_above_1"] = d.mean_trend_above_1;
    j["mean_trend_below_1"] = d.mean_trend_below_1;
    j["seed"] = header.seed;
    j["sign_above_1"] = d.sign_above_1;
    j["sign_below_1"] = d.sign_below_1;
    j["source"] = source;
    j["trend"] = d.trend;
    j["version"] = std::string(kVersion);
    return j;
}

void write_bundle(const AnalyzeBundle& b, const fsys::path& dir, const std::string& stem,
                  const std::string& instrument, const std::string& source,
                  const OutputHeader& header, ManifestWriter& manifest) {
    auto emit = [&](const std::string& suffix, auto writer) {
        const fsys::path p = dir / (stem + suffix);
        auto os = open_output(p);
        writer(os);
        manifest.add_output(p);
    };
    emit("_sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, b.sweep, header); });
    emit("_intervals.csv", [&](std::ostream& os) { write_intervals_csv(os, b.sweep, header); });
    emit("_moments.csv",
         [&](std::ostream& os) { write_moment_curves_csv(os, b.curves, header); });
    emit("_alpha.csv", [&](std::ostream& os) { write_alpha_csv(os, b.alphas, header); });
    for (const auto& cdf : b.survivals)
        emit("_survival_q" + slug(cdf.q) + ".csv",
             [&](std::ostream& os) { write_survival_csv(os, cdf, header); });
    if (b.collapse)
        emit("_collapse.json", [&](std::ostream& os) {
            os << collapse_to_json(*b.collapse, instrument, source, header).dump(2) << '\n';
        });
}

} // namespace

void run_analyze(const RunConfig& c) {
    const auto files = discover_inputs(c, true);
    const OutputHeader header{c.seed, config_hash(c)};
    const fsys::path dir = fsys::path(c.out_dir) / "analyze";
    fsys::create_directories(dir);

    ManifestWriter manifest(c, "analyze");

    struct Slot {
        std::optional<AnalyzeBundle> original;
        std::optional<AnalyzeBundle> surrogate;
    };
    std::vector<Slot> slots(files.size());
    std::map<double, std::vector<AlphaEstimate>> by_m, by_m_surrogate;

    process_batched(
        files.size(),
        [&](std::size_t i) {
            std::ifstream in(files[i].path);
            if (!in) throw DataError("cannot open " + files[i].path.string());
            VolatilitySeries v;
            try {
                v = read_volatility_csv(in, files[i].id);
            } catch (const DataError& e) {
                throw DataError(files[i].path.string() + ": " + e.what());
            }
            Slot& s = slots[i];
            s.original = analyze_series(v.values, c, CurveSource::original);
            if (c.with_surrogate && !s.original->skipped) {
                SurrogateConfig sc = c.surrogate;
                sc.rng_seed = derive_seed(c.seed, "surrogate", {fnv1a64(files[i].id)});
                const auto sv = make_surrogate(v.values, sc);
                s.surrogate = analyze_series(sv, c, CurveSource::surrogate);
            }
        },
        [&](std::size_t i) {
            const std::string& id = files[i].id;
            Slot& s = slots[i];
            const AnalyzeBundle& orig = *s.original;
            for (const auto& w : orig.sweep.warnings)
                manifest.add_warning(id, "sweep target " + format_double(w.target) + ": " +
                                             w.reason);
            for (const auto& n : orig.notes) manifest.add_warning(id, n);
            if (orig.skipped) {
                manifest.add_skip(id, orig.skip_reason);
            } else {
                write_bundle(orig, dir, id, id, "original", header, manifest);
                for (const auto& a : orig.alphas) by_m[a.m].push_back(a);
            }
            if (s.surrogate) {
                const AnalyzeBundle& sur = *s.surrogate;
                for (const auto& n : sur.notes) manifest.add_warning(id, "surrogate: " + n);
                if (sur.skipped) {
                    manifest.add_skip(id, "surrogate: " + sur.skip_reason);
                } else {
                    write_bundle(sur, dir, id + "_surrogate", id, "surrogate", header, manifest);
                    for (const auto& a : sur.alphas) by_m_surrogate[a.m].push_back(a);
                }
            }
            s.original.reset();
            s.surrogate.reset();
        });

    auto emit_aggregates = [&](const std::map<double, std::vector<AlphaEstimate>>& groups,
                               const std::string& tag) {
        if (groups.empty()) return;
        std::vector<AlphaEnsemble> ensembles;
        for (const auto& [m, members] : groups) {
            ensembles.push_back(make_ensemble(m, members));
            const fsys::path hp =
                dir / ("alpha_histogram_m" + slug(m) + (tag.empty() ? "" : "_" + tag) + ".csv");
            auto os = open_output(hp);
            write_histogram_csv(os, alpha_histogram(members), header);
            manifest.add_output(hp);
        }
        const fsys::path ep =
            dir / ("ensemble_alpha" + (tag.empty() ? "" : "_" + tag) + ".csv");
        auto os = open_output(ep);
        write_ensemble_csv(os, ensembles, header);
        manifest.add_output(ep);
    };
    emit_aggregates(by_m, "");
    emit_aggregates(by_m_surrogate, "surrogate");

    manifest.write();
}

void run_simulate(const RunConfig& c) {
    if (!c.discreteness_plan && !c.finite_size_plan)
        throw ValidationError(
            "config: simulate needs a plan object with discreteness and/or finite_size");
    const OutputHeader header{c.seed, config_hash(c)};
    const fsys::path dir = fsys::path(c.out_dir) / "simulate";
    fsys::create_directories(dir);

    ManifestWriter manifest(c, "simulate");

    if (c.discreteness_plan) {
        SimulationPlan plan = *c.discreteness_plan;
        plan.rng_seed = c.seed;
        const auto result = run_discreteness_experiment(plan);
        const fsys::path p = dir / "discreteness.csv";
        auto os = open_output(p);
        write_discreteness_csv(os, result, header);
        manifest.add_output(p);
    }
    if (c.finite_size_plan) {
        SimulationPlan plan = *c.finite_size_plan;
        plan.rng_seed = c.seed;
        const auto entries = run_finite_size_experiment(plan);
        const fsys::path p = dir / "finite_size.csv";
        auto os = open_output(p);
        write_finite_size_csv(os, entries, header);
        manifest.add_output(p);
    }
    manifest.write();
}

void run_surrogate(const RunConfig& c) {
    const auto files = discover_inputs(c, true);
    const OutputHeader header{c.seed, config_hash(c)};
    const fsys::path dir = fsys::path(c.out_dir) / "surrogate";
    fsys::create_directories(dir);

    ManifestWriter manifest(c, "surrogate");
    json instruments = json::array();
    std::vector<std::optional<VolatilitySeries>> slots(files.size());

    process_batched(
        files.size(),
        [&](std::size_t i) {
            std::ifstream in(files[i].path);
            if (!in) throw DataError("cannot open " + files[i].path.string());
            VolatilitySeries v;
            try {
                v = read_volatility_csv(in, files[i].id);
            } catch (const DataError& e) {
                throw DataError(files[i].path.string() + ": " + e.what());
            }
            SurrogateConfig sc = c.surrogate;
            sc.rng_seed = derive_seed(c.seed, "surrogate", {fnv1a64(files[i].id)});
            const auto sv = make_surrogate(v.values, sc);
            std::copy(sv.begin(), sv.end(), v.values.begin());
            slots[i] = std::move(v);
        },
        [&](std::size_t i) {
            const VolatilitySeries& v = *slots[i];
            const fsys::path p = dir / (files[i].id + ".csv");
            {
                auto os = open_output(p);
                write_volatility_csv(os, v, header);
            }
            manifest.add_output(p);
            instruments.push_back({{"id", files[i].id}, {"points", v.values.size()}});
            slots[i].reset();
        });

    manifest.extra()["instruments"] = instruments;
    manifest.write();
}

} // namespace retscale
