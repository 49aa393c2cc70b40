#include "retscale/volatility.hpp"

#include "retscale/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string_view>

namespace retscale {

std::size_t PriceSeries::total_points() const {
    std::size_t n = 0;
    for (const auto& d : days) n += d.prices.size();
    return n;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw DataError("line " + std::to_string(line) + ": " + what);
}

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

PriceSeries load_prices(std::istream& in, const std::string& instrument_id) {
    PriceSeries series;
    series.instrument_id = instrument_id;

    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw DataError("empty input");
    ++lineno;
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::string h = line;
        std::erase_if(h, [](unsigned char c) { return std::isspace(c); });
        if (h != "date,minute,price") fail(lineno, "expected header 'date,minute,price'");
    }

    // date -> (minute -> price); ordered map keeps days chronological.
    std::map<std::string, std::map<int, double>, std::less<>> by_date;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        std::string_view row = line;
        auto c1 = row.find(',');
        auto c2 = c1 == std::string_view::npos ? std::string_view::npos : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos)
            fail(lineno, "expected 3 comma-separated fields");

        auto date = trim(row.substr(0, c1));
        auto minute_f = trim(row.substr(c1 + 1, c2 - c1 - 1));
        auto price_f = trim(row.substr(c2 + 1));

        if (!is_iso_date(date)) fail(lineno, "malformed date '" + std::string(date) + "'");

        int minute = -1;
        auto [mp, mec] = std::from_chars(minute_f.data(), minute_f.data() + minute_f.size(), minute);
        if (mec != std::errc() || mp != minute_f.data() + minute_f.size())
            fail(lineno, "malformed minute '" + std::string(minute_f) + "'");
        if (minute < 0 || minute >= kMinutesPerDay)
            fail(lineno, "minute " + std::to_string(minute) + " outside [0, " +
                             std::to_string(kMinutesPerDay - 1) + "]");

        double price = std::numeric_limits<double>::quiet_NaN();
        auto [pp, pec] = std::from_chars(price_f.data(), price_f.data() + price_f.size(), price);
        if (pec != std::errc() || pp != price_f.data() + price_f.size() || !std::isfinite(price))
            fail(lineno, "malformed price '" + std::string(price_f) + "'");
        if (price <= 0.0) fail(lineno, "non-positive price " + std::string(price_f));

        auto& day = by_date[std::string(date)];
        if (!day.emplace(minute, price).second)
            fail(lineno, "duplicate entry for " + std::string(date) + " minute " +
                             std::to_string(minute));
    }

    if (by_date.empty()) throw DataError("no price rows");

    series.days.reserve(by_date.size());
    for (auto& [date, marks] : by_date) {
        TradingDay day;
        day.date = date;
        day.minutes.reserve(marks.size());
        day.prices.reserve(marks.size());
        for (auto& [minute, price] : marks) {
            day.minutes.push_back(minute);
            day.prices.push_back(price);
        }
        series.days.push_back(std::move(day));
    }
    return series;
}

RawVolatility raw_volatility(const PriceSeries& p) {
    RawVolatility out;
    for (std::size_t d = 0; d < p.days.size(); ++d) {
        const auto& day = p.days[d];
        if (day.prices.size() < 2)
            throw DataError("day " + day.date + " has fewer than 2 prices");
        for (std::size_t i = 0; i + 1 < day.prices.size(); ++i) {
            if (day.minutes[i + 1] != day.minutes[i] + 1) continue;  // gap in the record
            out.day_ordinals.push_back(static_cast<std::int32_t>(d));
            out.minute_indexes.push_back(day.minutes[i]);
            out.values.push_back(std::fabs(std::log(day.prices[i + 1] / day.prices[i])));
        }
    }
    if (out.values.empty())
        throw DataError("no consecutive-minute price pairs, cannot form returns");
    return out;
}

std::vector<double> seasonal_profile(const RawVolatility& r) {
    std::vector<double> sum(kReturnsPerDay, 0.0);
    std::vector<std::int64_t> count(kReturnsPerDay, 0);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        sum[r.minute_indexes[i]] += r.values[i];
        ++count[r.minute_indexes[i]];
    }
    std::vector<double> profile(kReturnsPerDay, std::numeric_limits<double>::quiet_NaN());
    for (int m = 0; m < kReturnsPerDay; ++m)
        if (count[m] > 0) profile[m] = sum[m] / static_cast<double>(count[m]);
    return profile;
}

void deseasonalize(RawVolatility& r, const std::vector<double>& profile) {
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        double p = profile[r.minute_indexes[i]];
        if (!(p > 0.0))
            throw DataError("seasonal profile is zero at minute " +
                            std::to_string(r.minute_indexes[i]) +
                            "; price never moved there");
        r.values[i] /= p;
    }
}

double normalize_to_unit_sd(std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw DataError("need at least 2 volatility values to normalize");
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) throw DataError("volatility series has zero variance");
    for (double& v : values) v /= sd;
    return sd;
}

VolatilitySeries compute_volatility(const PriceSeries& p) {
    RawVolatility raw = raw_volatility(p);
    std::vector<double> profile = seasonal_profile(raw);
    deseasonalize(raw, profile);
    double sd = normalize_to_unit_sd(raw.values);

    VolatilitySeries out;
    out.instrument_id = p.instrument_id;
    out.day_ordinals = std::move(raw.day_ordinals);
    out.minute_indexes = std::move(raw.minute_indexes);
    out.values = std::move(raw.values);
    out.seasonal_profile = std::move(profile);
    out.normalization_sd = sd;
    return out;
}

} // namespace retscale
