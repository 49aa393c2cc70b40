#include "retscale/io.hpp"

#include "retscale/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <system_error>

namespace retscale {

void write_header(std::ostream& os, const OutputHeader& h) {
    os << "# retscale " << kVersion << "\n";
    os << "# seed " << h.seed << "\n";
    os << "# config " << h.config_hash << "\n";
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw ValidationError("format_double: conversion failed");
    return std::string(buf, p);
}

std::string slug(double v) {
    std::string s = format_double(v);
    for (char& c : s) {
        if (c == '.') c = 'p';
        else if (c == '-') c = 'm';
        else if (c == '+') c = '_';
    }
    return s;
}

void write_volatility_csv(std::ostream& os, const VolatilitySeries& v, const OutputHeader& h) {
    write_header(os, h);
    os << "day_ordinal,minute_index,v\n";
    for (std::size_t i = 0; i < v.values.size(); ++i)
        os << v.day_ordinals[i] << ',' << v.minute_indexes[i] << ','
           << format_double(v.values[i]) << '\n';
}

void write_profile_csv(std::ostream& os, std::span<const double> profile, const OutputHeader& h) {
    write_header(os, h);
    os << "minute_index,mean_volatility\n";
    for (std::size_t m = 0; m < profile.size(); ++m)
        if (std::isfinite(profile[m]))
            os << m << ',' << format_double(profile[m]) << '\n';
}

void write_sweep_csv(std::ostream& os, const ThresholdSweep& sweep, const OutputHeader& h) {
    write_header(os, h);
    os << "q,mean_tau,n\n";
    for (const auto& e : sweep.entries)
        os << format_double(e.q) << ',' << format_double(e.mean_tau) << ',' << e.n_exceedances
           << '\n';
}

void write_intervals_csv(std::ostream& os, const ThresholdSweep& sweep, const OutputHeader& h) {
    write_header(os, h);
    os << "q,mean_tau,n,taus...\n";
    for (const auto& e : sweep.entries) {
        os << format_double(e.q) << ',' << format_double(e.mean_tau) << ',' << e.n_exceedances;
        for (auto t : e.taus) os << ',' << t;
        os << '\n';
    }
}

void write_survival_csv(std::ostream& os, const EmpiricalCdf& cdf, const OutputHeader& h) {
    write_header(os, h);
    os << "x,survival\n";
    for (std::size_t i = 0; i < cdf.xs.size(); ++i)
        os << format_double(cdf.xs[i]) << ',' << format_double(cdf.survival[i]) << '\n';
}

void write_moment_curves_csv(std::ostream& os, std::span<const MomentCurve> curves,
                             const OutputHeader& h) {
    write_header(os, h);
    os << "m,mean_tau,mu_m\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.mean_taus.size(); ++i)
            os << format_double(c.m) << ',' << format_double(c.mean_taus[i]) << ','
               << format_double(c.moments[i]) << '\n';
}

void write_alpha_csv(std::ostream& os, std::span<const AlphaEstimate> estimates,
                     const OutputHeader& h) {
    write_header(os, h);
    os << "m,alpha,stderr,n_points\n";
    for (const auto& e : estimates)
        os << format_double(e.m) << ',' << format_double(e.alpha) << ','
           << format_double(e.stderr_) << ',' << e.n_points << '\n';
}

void write_ensemble_csv(std::ostream& os, std::span<const AlphaEnsemble> ensembles,
                        const OutputHeader& h) {
    write_header(os, h);
    os << "m,mean_alpha,std_alpha\n";
    for (const auto& e : ensembles)
        os << format_double(e.m) << ',' << format_double(e.mean_alpha) << ','
           << format_double(e.std_alpha) << '\n';
}

void write_histogram_csv(std::ostream& os, const AlphaHistogram& hist, const OutputHeader& h) {
    write_header(os, h);
    os << "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < hist.bin_left.size(); ++i)
        os << format_double(hist.bin_left[i]) << ','
           << format_double(hist.bin_left[i] + hist.bin_width) << ',' << hist.counts[i] << '\n';
}

void write_discreteness_csv(std::ostream& os, const DiscretenessResult& result,
                            const OutputHeader& h) {
    write_header(os, h);
    os << "resolution,m,mean_tau,mu_m\n";
    for (const auto& dc : result.curves)
        for (std::size_t i = 0; i < dc.curve.mean_taus.size(); ++i)
            os << format_double(dc.resolution) << ',' << format_double(dc.curve.m) << ','
               << format_double(dc.curve.mean_taus[i]) << ','
               << format_double(dc.curve.moments[i]) << '\n';
}

void write_finite_size_csv(std::ostream& os, std::span<const FiniteSizeEntry> entries,
                           const OutputHeader& h) {
    write_header(os, h);
    os << "size,m,mean_alpha\n";
    for (const auto& e : entries)
        os << e.size << ',' << format_double(e.m) << ',' << format_double(e.mean_alpha) << '\n';
}

VolatilitySeries read_volatility_csv(std::istream& in, const std::string& instrument_id) {
    VolatilitySeries out;
    out.instrument_id = instrument_id;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;

    auto fail = [&](const std::string& what) -> void {
        throw DataError("line " + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') continue;
        if (!saw_header) {
            if (line != "day_ordinal,minute_index,v")
                fail("expected header 'day_ordinal,minute_index,v'");
            saw_header = true;
            continue;
        }
        std::string_view row = line;
        auto c1 = row.find(',');
        auto c2 = c1 == std::string_view::npos ? std::string_view::npos : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos)
            fail("expected 3 comma-separated fields");

        auto parse_i32 = [&](std::string_view f, const char* name) {
            std::int32_t v = 0;
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || p != f.data() + f.size())
                fail(std::string("malformed ") + name + " '" + std::string(f) + "'");
            return v;
        };
        auto day = parse_i32(row.substr(0, c1), "day_ordinal");
        auto minute = parse_i32(row.substr(c1 + 1, c2 - c1 - 1), "minute_index");

        auto vf = row.substr(c2 + 1);
        double value = std::numeric_limits<double>::quiet_NaN();
        auto [p, ec] = std::from_chars(vf.data(), vf.data() + vf.size(), value);
        if (ec != std::errc() || p != vf.data() + vf.size() || !std::isfinite(value) ||
            value < 0.0)
            fail("malformed volatility value '" + std::string(vf) + "'");

        out.day_ordinals.push_back(day);
        out.minute_indexes.push_back(minute);
        out.values.push_back(value);
    }
    if (!saw_header) throw DataError("missing volatility header");
    if (out.values.empty()) throw DataError("no volatility rows");
    return out;
}

} // namespace retscale
