#include "retscale/io.hpp"
#include "retscale/errors.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace retscale;

namespace {

const OutputHeader kHdr{7, "abc123"};
const std::string kHdrText = "# retscale 0.1.0\n# seed 7\n# config abc123\n";

double reparse(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(ec == std::errc());
    REQUIRE(p == s.data() + s.size());
    return v;
}

} // namespace

TEST_CASE("format_double is shortest and round-trips bitwise") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(0.0) == "0");

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    std::exponential_distribution<double> e(1.0);
    for (int i = 0; i < 2000; ++i) {
        for (double v : {u(rng), e(rng), u(rng) * 1e-12, u(rng) * 1e12}) {
            const std::string s = format_double(v);
            CHECK(reparse(s) == v);
        }
    }
    CHECK(reparse(format_double(std::numeric_limits<double>::denorm_min())) ==
          std::numeric_limits<double>::denorm_min());
}

TEST_CASE("filename slugs avoid dots and signs") {
    CHECK(slug(0.5) == "0p5");
    CHECK(slug(2.0) == "2");
    CHECK(slug(-2.0) == "m2");
    CHECK(slug(0.25) == "0p25");
    CHECK(slug(1e21) == "1e_21");
}

TEST_CASE("every output carries the run identity header") {
    std::ostringstream os;
    write_header(os, kHdr);
    CHECK(os.str() == kHdrText);
}

TEST_CASE("sweep and interval writers: golden output") {
    IntervalSeries e;
    e.q = 2.0;
    e.taus = {3, 2};
    e.mean_tau = 2.5;
    e.n_exceedances = 3;
    ThresholdSweep sweep;
    sweep.entries.push_back(e);

    std::ostringstream os;
    write_sweep_csv(os, sweep, kHdr);
    CHECK(os.str() == kHdrText + "q,mean_tau,n\n2,2.5,3\n");

    std::ostringstream os2;
    write_intervals_csv(os2, sweep, kHdr);
    CHECK(os2.str() == kHdrText + "q,mean_tau,n,taus...\n2,2.5,3,3,2\n");
}

TEST_CASE("survival, profile and curve writers: golden output") {
    {
        EmpiricalCdf cdf;
        cdf.xs = {0.5, 1.5};
        cdf.survival = {1.0, 0.5};
        std::ostringstream os;
        write_survival_csv(os, cdf, kHdr);
        CHECK(os.str() == kHdrText + "x,survival\n0.5,1\n1.5,0.5\n");
    }
    {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const std::vector<double> profile{0.25, nan, 0.5};
        std::ostringstream os;
        write_profile_csv(os, profile, kHdr);
        CHECK(os.str() == kHdrText + "minute_index,mean_volatility\n0,0.25\n2,0.5\n");
    }
    {
        MomentCurve c;
        c.m = 2.0;
        c.mean_taus = {10.0, 100.0};
        c.moments = {1.5, 1.625};
        std::ostringstream os;
        write_moment_curves_csv(os, std::vector<MomentCurve>{c}, kHdr);
        CHECK(os.str() == kHdrText + "m,mean_tau,mu_m\n2,10,1.5\n2,100,1.625\n");
    }
}

TEST_CASE("alpha, ensemble and histogram writers: golden output") {
    {
        AlphaEstimate e;
        e.m = 2.0;
        e.alpha = 0.125;
        e.stderr_ = 0.5;
        e.n_points = 5;
        std::ostringstream os;
        write_alpha_csv(os, std::vector<AlphaEstimate>{e}, kHdr);
        CHECK(os.str() == kHdrText + "m,alpha,stderr,n_points\n2,0.125,0.5,5\n");
    }
    {
        AlphaEnsemble ens;
        ens.m = 2.0;
        ens.mean_alpha = 0.1015625;
        ens.std_alpha = 0.03125;
        std::ostringstream os;
        write_ensemble_csv(os, std::vector<AlphaEnsemble>{ens}, kHdr);
        CHECK(os.str() == kHdrText + "m,mean_alpha,std_alpha\n2,0.1015625,0.03125\n");
    }
    {
        AlphaHistogram h;
        h.m = 2.0;
        h.bin_width = 0.02;
        h.bin_left = {0.0, 0.02};
        h.counts = {3, 1};
        std::ostringstream os;
        write_histogram_csv(os, h, kHdr);
        CHECK(os.str() == kHdrText + "bin_left,bin_right,count\n0,0.02,3\n0.02,0.04,1\n");
    }
}

TEST_CASE("simulation writers: golden output") {
    {
        DiscretenessResult r;
        r.gamma = 0.3;
        DiscretenessCurve dc;
        dc.resolution = 1.0;
        dc.curve.m = 0.5;
        dc.curve.mean_taus = {5.0};
        dc.curve.moments = {0.875};
        r.curves.push_back(dc);
        std::ostringstream os;
        write_discreteness_csv(os, r, kHdr);
        CHECK(os.str() == kHdrText + "resolution,m,mean_tau,mu_m\n1,0.5,5,0.875\n");
    }
    {
        FiniteSizeEntry e;
        e.size = 1000;
        e.m = 8.0;
        e.mean_alpha = -0.25;
        std::ostringstream os;
        write_finite_size_csv(os, std::vector<FiniteSizeEntry>{e}, kHdr);
        CHECK(os.str() == kHdrText + "size,m,mean_alpha\n1000,8,-0.25\n");
    }
}

TEST_CASE("volatility series round-trips through its CSV form bitwise") {
    VolatilitySeries v;
    v.instrument_id = "rt";
    std::mt19937_64 rng(2);
    std::lognormal_distribution<double> ln(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        v.day_ordinals.push_back(i / 390);
        v.minute_indexes.push_back(i % 390);
        v.values.push_back(ln(rng));
    }

    std::ostringstream os;
    write_volatility_csv(os, v, kHdr);

    std::istringstream in(os.str());
    const auto back = read_volatility_csv(in, "rt");
    CHECK(back.instrument_id == "rt");
    CHECK(back.day_ordinals == v.day_ordinals);
    CHECK(back.minute_indexes == v.minute_indexes);
    CHECK(back.values == v.values);  // bitwise, thanks to shortest round-trip format
}

TEST_CASE("volatility reader rejects bad input with line numbers") {
    auto expect = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            read_volatility_csv(in, "x");
            FAIL_CHECK("expected DataError containing: " << needle);
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    const std::string hdr = "day_ordinal,minute_index,v\n";

    expect("", "missing volatility header");
    expect("# only comments\n", "missing volatility header");
    expect("wrong,header,here\n", "line 1");
    expect(hdr, "no volatility rows");
    expect(hdr + "0,0,1.5\n0,1\n", "line 3");
    expect(hdr + "0,0,1.5\n0,1,oops\n", "malformed volatility value");
    expect(hdr + "0,0,-1.5\n", "malformed volatility value");
    expect(hdr + "0,zz,1.5\n", "malformed minute_index");
    expect(hdr + "yy,0,1.5\n", "malformed day_ordinal");

    // comments and blank lines between rows are fine
    std::istringstream ok(kHdrText + hdr + "0,0,1.5\n\n# note\n0,1,2.5\n");
    const auto v = read_volatility_csv(ok, "x");
    CHECK(v.values == std::vector<double>{1.5, 2.5});
}
