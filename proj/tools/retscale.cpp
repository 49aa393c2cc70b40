#include "retscale/commands.hpp"
#include "retscale/errors.hpp"
#include "retscale/io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>

namespace {

void parse_range(const std::string& text, retscale::RunConfig& cfg) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw retscale::ValidationError("--range expects the form lo:hi, got '" + text + "'");
    double lo = 0.0, hi = 0.0;
    auto parse = [&](std::size_t from, std::size_t to, double& out) {
        const char* first = text.data() + from;
        const char* last = text.data() + to;
        auto [p, ec] = std::from_chars(first, last, out);
        return ec == std::errc() && p == last;
    };
    if (!parse(0, colon, lo) || !parse(colon + 1, text.size(), hi) || !(lo >= 0.0) ||
        !(lo < hi))
        throw retscale::ValidationError("--range expects 0 <= lo < hi, got '" + text + "'");
    cfg.fit_low = lo;
    cfg.fit_high = hi;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volatility return-interval analysis"};
    app.set_version_flag("--version", std::string(retscale::kVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir, range_text;
    std::uint64_t seed = 0;
    bool surrogate_flag = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--seed", seed, "master RNG seed (overrides config)");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
    };

    CLI::App* vol = app.add_subcommand("volatility", "price CSVs to normalized volatility");
    add_common(vol);
    CLI::App* ana = app.add_subcommand(
        "analyze", "threshold sweep, scaled-interval distributions, moment scaling");
    add_common(ana);
    ana->add_option("--range", range_text, "alpha fit range as lo:hi (default 10:100)");
    ana->add_flag("--surrogate", surrogate_flag,
                  "repeat the analysis on spectrum-preserving surrogates");
    CLI::App* sim = app.add_subcommand("simulate", "discreteness and finite-size Monte Carlo");
    add_common(sim);
    CLI::App* sur = app.add_subcommand("surrogate", "write surrogate volatility series");
    add_common(sur);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        retscale::RunConfig cfg = active->count("--config") > 0
                                      ? retscale::load_config(config_path)
                                      : retscale::config_from_json(nlohmann::json::object());
        if (active->count("--seed") > 0) cfg.seed = seed;
        if (active->count("--out") > 0) cfg.out_dir = out_dir;
        if (active == ana) {
            if (ana->count("--range") > 0) parse_range(range_text, cfg);
            if (surrogate_flag) cfg.with_surrogate = true;
        }

        if (active == vol) {
            retscale::run_volatility(cfg);
        } else if (active == ana) {
            retscale::run_analyze(cfg);
        } else if (active == sim) {
            retscale::run_simulate(cfg);
        } else if (active == sur) {
            retscale::run_surrogate(cfg);
        }
        return 0;
    } catch (const retscale::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const retscale::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
