#include "synthetic.hpp"

#include "retscale/fft.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace synth {

namespace {

void normalize_unit_sd(std::vector<double>& v, bool center) {
    const double n = static_cast<double>(v.size());
    if (center) {
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
        for (double& x : v) x -= mean;
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    for (double& x : v) x /= sd;
}

} // namespace

std::vector<double> long_memory_gaussian(std::size_t n, double beta, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<std::complex<double>> spec(n / 2 + 1);
    spec[0] = 0.0;
    for (std::size_t k = 1; k < spec.size(); ++k) {
        const double amp = std::pow(static_cast<double>(k), -beta / 2.0);
        spec[k] = {amp * gauss(rng), amp * gauss(rng)};
    }
    if (n % 2 == 0) spec.back() = {spec.back().real(), 0.0};  // Nyquist bin is real
    std::vector<double> x = retscale::irfft(spec, n);
    normalize_unit_sd(x, true);
    return x;
}

std::string u_shape_price_csv(int days, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::ostringstream os;
    os << "date,minute,price\n";
    os.precision(12);
    for (int d = 0; d < days; ++d) {
        const int yyyy = 2000 + d / 372;
        const int mm = 1 + (d / 31) % 12;
        const int dd = 1 + d % 31;
        char date[16];
        std::snprintf(date, sizeof(date), "%04d-%02d-%02d", yyyy, mm, dd);
        double price = 100.0;
        for (int t = 0; t <= 390; ++t) {
            os << date << ',' << t << ',' << price << '\n';
            const double x = static_cast<double>(t) / 389.0;
            const double shape = 0.4 + 2.4 * (x - 0.5) * (x - 0.5);
            price *= std::exp(0.001 * shape * gauss(rng));
        }
    }
    return os.str();
}

std::vector<double> nonlinear_volatility(std::size_t n, double lambda, std::uint64_t seed) {
    std::vector<double> h = long_memory_gaussian(n, 0.8, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(lambda * h[i]) * std::fabs(gauss(rng));
    normalize_unit_sd(v, false);
    return v;
}

std::vector<double> linear_gaussian_volatility(std::size_t n, double beta, std::uint64_t seed) {
    // exp is monotone, so thresholding this series is thresholding the
    // Gaussian itself: the kind of dependence a phase-randomizing surrogate
    // preserves. (|g| would not do: folding turns the sign-independent
    // magnitude clustering into nonlinear structure the surrogate destroys.)
    std::vector<double> g = long_memory_gaussian(n, beta, seed);
    for (double& x : g) x = std::exp(0.7 * x);
    normalize_unit_sd(g, false);
    return g;
}

void write_volatility_file(const std::filesystem::path& path, const std::vector<double>& values) {
    std::ofstream os(path, std::ios::binary);
    os << "day_ordinal,minute_index,v\n";
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        os << i / 390 << ',' << i % 390 << ',' << values[i] << '\n';
}

std::filesystem::path make_temp_dir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    const auto dir =
        base / ("retscale_" + tag + "_" + std::to_string(counter.fetch_add(1)) + "_" +
                std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace synth
