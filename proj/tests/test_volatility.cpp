#include "retscale/volatility.hpp"
#include "retscale/errors.hpp"

#include "synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace retscale;

namespace {

PriceSeries parse(const std::string& csv) {
    std::istringstream in(csv);
    return load_prices(in, "test");
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

TEST_CASE("two-day hand example through the whole pipeline") {
    const std::string csv =
        "date,minute,price\n"
        "2020-01-02,0,100\n"
        "2020-01-02,1,101\n"
        "2020-01-02,2,100.5\n"
        "2020-01-03,0,50\n"
        "2020-01-03,1,50.6\n";
    const auto prices = parse(csv);
    REQUIRE(prices.days.size() == 2);
    CHECK(prices.total_points() == 5);
    CHECK(prices.days[0].date == "2020-01-02");
    CHECK(prices.days[1].date == "2020-01-03");

    const auto raw = raw_volatility(prices);
    const double r00 = std::fabs(std::log(101.0 / 100.0));
    const double r01 = std::fabs(std::log(100.5 / 101.0));
    const double r10 = std::fabs(std::log(50.6 / 50.0));
    REQUIRE(raw.values.size() == 3);
    CHECK(raw.values[0] == doctest::Approx(r00).epsilon(1e-14));
    CHECK(raw.values[1] == doctest::Approx(r01).epsilon(1e-14));
    CHECK(raw.values[2] == doctest::Approx(r10).epsilon(1e-14));
    CHECK(raw.day_ordinals == std::vector<std::int32_t>{0, 0, 1});
    CHECK(raw.minute_indexes == std::vector<std::int32_t>{0, 1, 0});

    const auto profile = seasonal_profile(raw);
    REQUIRE(profile.size() == kReturnsPerDay);
    CHECK(profile[0] == doctest::Approx((r00 + r10) / 2.0).epsilon(1e-14));
    CHECK(profile[1] == doctest::Approx(r01).epsilon(1e-14));
    CHECK(std::isnan(profile[2]));

    // final values follow by dividing out the profile and the sample sd
    const std::vector<double> u{r00 / profile[0], r01 / profile[1], r10 / profile[0]};
    const double sd = sample_sd(u);

    const auto vol = compute_volatility(prices);
    REQUIRE(vol.values.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(vol.values[i] == doctest::Approx(u[i] / sd).epsilon(1e-12));
    CHECK(vol.normalization_sd == doctest::Approx(sd).epsilon(1e-12));
    CHECK(sample_sd(vol.values) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("parse errors carry 1-based line numbers") {
    auto expect_line = [](const std::string& csv, const std::string& needle, int line) {
        try {
            parse(csv);
            FAIL_CHECK("expected DataError for: " << needle);
        } catch (const DataError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("line " + std::to_string(line)) != std::string::npos);
            CHECK(msg.find(needle) != std::string::npos);
        }
    };
    const std::string head = "date,minute,price\n2020-01-02,0,100\n";

    expect_line(head + "2020-01-02,1,0.0\n", "non-positive price", 3);
    expect_line(head + "2020-01-02,1,-5\n", "non-positive price", 3);
    expect_line(head + "2020-01-02,1\n", "3 comma-separated fields", 3);
    expect_line(head + "2020-01-02,1,abc\n", "malformed price", 3);
    expect_line(head + "2020-01-02,xx,100\n", "malformed minute", 3);
    expect_line(head + "2020-01-02,391,100\n", "outside [0, 390]", 3);
    expect_line(head + "20200102,1,100\n", "malformed date", 3);
    expect_line(head + "2020-01-02,0,101\n", "duplicate entry", 3);

    CHECK_THROWS_WITH_AS(parse("minute,price\n"), doctest::Contains("header"), DataError);
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("date,minute,price\n"), DataError);  // no rows
}

TEST_CASE("header tolerates BOM, CRLF and spaces; blank lines are skipped") {
    const std::string csv =
        "\xEF\xBB\xBF" "date, minute, price\r\n"
        "2020-01-02,0,100\r\n"
        "\n"
        "2020-01-02,1,101\r\n"
        "2020-01-02,2,102\r\n";
    const auto prices = parse(csv);
    REQUIRE(prices.days.size() == 1);
    CHECK(prices.days[0].prices == std::vector<double>{100, 101, 102});
}

TEST_CASE("rows arrive unsorted and are grouped by date, ordered by minute") {
    const std::string csv =
        "date,minute,price\n"
        "2020-01-03,1,51\n"
        "2020-01-02,2,102\n"
        "2020-01-02,0,100\n"
        "2020-01-03,0,50\n"
        "2020-01-02,1,101\n";
    const auto prices = parse(csv);
    REQUIRE(prices.days.size() == 2);
    CHECK(prices.days[0].date == "2020-01-02");
    CHECK(prices.days[0].minutes == std::vector<int>{0, 1, 2});
    CHECK(prices.days[0].prices == std::vector<double>{100, 101, 102});
    CHECK(prices.days[1].minutes == std::vector<int>{0, 1});
}

TEST_CASE("degenerate inputs are rejected with clear errors") {
    {
        // a day with a single quote cannot produce a return
        const auto prices = parse("date,minute,price\n2020-01-02,0,100\n2020-01-03,0,100\n2020-01-03,1,101\n");
        CHECK_THROWS_WITH_AS(raw_volatility(prices), doctest::Contains("fewer than 2 prices"),
                             DataError);
    }
    {
        // price never moves: zero seasonal profile
        const auto prices = parse("date,minute,price\n2020-01-02,0,100\n2020-01-02,1,100\n");
        CHECK_THROWS_WITH_AS(compute_volatility(prices), doctest::Contains("zero"), DataError);
    }
    {
        // moves, but every deseasonalized value equals 1: zero variance
        const double e = std::exp(1.0);
        std::ostringstream csv;
        csv << "date,minute,price\n2020-01-02,0,100\n2020-01-02,1," << 100.0 * e
            << "\n2020-01-02,2,100\n";
        const auto prices = parse(csv.str());
        CHECK_THROWS_WITH_AS(compute_volatility(prices), doctest::Contains("zero variance"),
                             DataError);
    }
    {
        // only non-consecutive minutes: no usable pair anywhere
        const auto prices = parse("date,minute,price\n2020-01-02,0,100\n2020-01-02,5,101\n");
        CHECK_THROWS_WITH_AS(raw_volatility(prices), doctest::Contains("consecutive"), DataError);
    }
}

TEST_CASE("minute gaps produce no synthetic returns") {
    const auto prices = parse(
        "date,minute,price\n"
        "2020-01-02,0,100\n"
        "2020-01-02,1,101\n"
        "2020-01-02,5,103\n"
        "2020-01-02,6,104\n");
    const auto raw = raw_volatility(prices);
    REQUIRE(raw.values.size() == 2);  // (0,1) and (5,6); the 1->5 jump is skipped
    CHECK(raw.minute_indexes == std::vector<std::int32_t>{0, 5});
}

TEST_CASE("deseasonalizing twice is a no-op") {
    const auto prices = parse(synth::u_shape_price_csv(40, 9));
    auto raw = raw_volatility(prices);
    const auto profile = seasonal_profile(raw);
    deseasonalize(raw, profile);
    const auto flat = seasonal_profile(raw);
    for (int m = 0; m < kReturnsPerDay; ++m)
        if (!std::isnan(flat[m])) CHECK(flat[m] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("intraday U-shape is removed from the normalized series") {
    const auto prices = parse(synth::u_shape_price_csv(500, 31));
    CHECK(prices.total_points() == 500u * kMinutesPerDay);

    // the raw series must actually carry the pattern, or the test is vacuous
    const auto raw = raw_volatility(prices);
    const auto profile = seasonal_profile(raw);
    double pmin = 1e300, pmax = 0.0;
    for (double p : profile) {
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
    }
    CHECK(pmax / pmin > 2.0);

    const auto vol = compute_volatility(prices);
    CHECK(vol.values.size() == 500u * kReturnsPerDay);
    CHECK(sample_sd(vol.values) == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<double> sum(kReturnsPerDay, 0.0);
    std::vector<int> count(kReturnsPerDay, 0);
    for (std::size_t i = 0; i < vol.values.size(); ++i) {
        sum[vol.minute_indexes[i]] += vol.values[i];
        ++count[vol.minute_indexes[i]];
    }
    const double overall = mean_of(vol.values);
    for (int m = 0; m < kReturnsPerDay; ++m) {
        REQUIRE(count[m] == 500);
        CHECK(std::fabs(sum[m] / count[m] - overall) / overall <= 0.02);
    }
}
