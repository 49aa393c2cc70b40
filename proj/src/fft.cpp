#include "retscale/fft.hpp"

#include "retscale/errors.hpp"

#include <fftw3.h>

#include <mutex>

namespace retscale {

namespace {
// FFTW plan creation/destruction is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
    if (x.empty()) throw ValidationError("rfft: empty input");
    const std::size_t n = x.size();
    std::vector<double> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(n / 2 + 1);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spec, std::size_t n) {
    if (n == 0) throw ValidationError("irfft: zero length");
    if (spec.size() != n / 2 + 1)
        throw ValidationError("irfft: expected " + std::to_string(n / 2 + 1) +
                              " coefficients for length " + std::to_string(n));
    // c2r destroys its input, so work on a copy.
    std::vector<std::complex<double>> in(spec.begin(), spec.end());
    std::vector<double> out(n);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                    reinterpret_cast<fftw_complex*>(in.data()),
                                    out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

} // namespace retscale
