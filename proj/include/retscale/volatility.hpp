#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace retscale {

// Prices per full trading day (one per minute mark) and returns per full day.
inline constexpr int kMinutesPerDay = 391;
inline constexpr int kReturnsPerDay = 390;

struct TradingDay {
    std::string date;               // ISO-8601 calendar date
    std::vector<int> minutes;       // strictly increasing, each in [0, 390]
    std::vector<double> prices;     // strictly positive, parallel to minutes
};

// Raw per-instrument minute-bar price record, ordered by date.
struct PriceSeries {
    std::string instrument_id;
    std::vector<TradingDay> days;
    std::size_t total_points() const;
};

// Deseasonalized, variance-normalized absolute log returns. values has unit
// sample standard deviation; minute_indexes label each return with the minute
// of its left endpoint.
struct VolatilitySeries {
    std::string instrument_id;
    std::vector<std::int32_t> day_ordinals;
    std::vector<std::int32_t> minute_indexes;
    std::vector<double> values;
    std::vector<double> seasonal_profile;  // size 390; NaN where a minute was never observed
    double normalization_sd = 0.0;         // sd of the deseasonalized series (step 3 divisor)
};

// Parses CSV with header `date,minute,price`. Rows are grouped by date and
// sorted by minute; errors carry the 1-based line number. Rejects
// non-positive prices, minutes outside [0, 390] and duplicate (date, minute)
// pairs.
PriceSeries load_prices(std::istream& in, const std::string& instrument_id);

// Absolute log price changes between consecutive recorded minutes within each
// day. No overnight returns: a day of k prices yields k-1 values.
struct RawVolatility {
    std::vector<std::int32_t> day_ordinals;
    std::vector<std::int32_t> minute_indexes;
    std::vector<double> values;
};
RawVolatility raw_volatility(const PriceSeries& p);

// Cross-day mean of the raw volatility per minute-of-day. NaN for minutes
// with no observations.
std::vector<double> seasonal_profile(const RawVolatility& r);

// Divides each value by the profile entry of its minute. Errors on a profile
// entry of exactly zero (the price never moved at that minute on any day).
void deseasonalize(RawVolatility& r, const std::vector<double>& profile);

// Divides by the sample standard deviation (denominator N-1) and returns it.
// Errors when the series has zero variance.
double normalize_to_unit_sd(std::vector<double>& values);

// The full pipeline: raw absolute log returns, intraday-profile removal,
// normalization to unit standard deviation.
VolatilitySeries compute_volatility(const PriceSeries& p);

} // namespace retscale
