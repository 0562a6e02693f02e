#include "rabsorb/transform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "rabsorb/errors.hpp"

namespace rabsorb {

namespace {

using cd = std::complex<double>;

// Sum dt * w_j f(t_j) exp(+i w t_j) / sqrt(2 pi) for one omega. The phase
// factor advances by multiplication and is recomputed from scratch every
// kResync steps, which keeps the accumulated rounding near machine precision
// without paying for sincos at every sample.
constexpr std::size_t kResync = 512;

template <typename T>
cd transform_at(const TimeGrid& grid, const std::vector<T>& values, double omega) {
    const std::size_t n = values.size();
    const cd step{std::cos(omega * grid.dt), std::sin(omega * grid.dt)};
    cd acc{0.0, 0.0};
    cd phase{std::cos(omega * grid.t_start), std::sin(omega * grid.t_start)};
    for (std::size_t j = 0; j < n; ++j) {
        if (j % kResync == 0) {
            const double t = grid.time_at(j);
            phase = {std::cos(omega * t), std::sin(omega * t)};
        }
        double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        acc += w * phase * values[j];
        phase *= step;
    }
    return acc * (grid.dt / std::sqrt(2.0 * std::numbers::pi));
}

template <typename T>
bool boundary_not_decayed(const std::vector<T>& values) {
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return false;
    return std::abs(values.front()) > 1e-6 * peak || std::abs(values.back()) > 1e-6 * peak;
}

template <typename T>
Spectrum transform_impl(const TimeGrid& grid, const std::vector<T>& values,
                        std::span<const double> omegas) {
    if (values.size() != grid.n_points)
        throw config_error("fourier: signal length does not match its grid");
    Spectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.resize(omegas.size());
    out.boundary_warning = boundary_not_decayed(values);

    const std::size_t n_omega = omegas.size();
    const unsigned workers = std::min<unsigned>(worker_count(), std::max<std::size_t>(n_omega / 64, 1));
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out.values[i] = transform_at(grid, values, omegas[i]);
    };
    if (workers <= 1 || n_omega < 128) {
        run_chunk(0, n_omega);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_omega + workers - 1) / workers;
    for (unsigned k = 0; k < workers; ++k) {
        const std::size_t begin = k * chunk;
        if (begin >= n_omega) break;
        pool.emplace_back(run_chunk, begin, std::min(begin + chunk, n_omega));
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

Spectrum fourier(const Signal& signal, std::span<const double> omegas) {
    return transform_impl(signal.grid, signal.values, omegas);
}

Spectrum fourier(const ComplexSignal& signal, std::span<const double> omegas) {
    return transform_impl(signal.grid, signal.values, omegas);
}

Signal apply_filter(const Signal& signal, const PulseSpec& spec) {
    Signal out = signal;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] *= envelope(spec, out.grid.time_at(i));
    return out;
}

ComplexSignal apply_filter(const ComplexSignal& signal, const PulseSpec& spec) {
    ComplexSignal out = signal;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] *= envelope(spec, out.grid.time_at(i));
    return out;
}

unsigned worker_count() {
    if (const char* env = std::getenv("RABI_ABSORB_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<double> uniform_omega_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || hi <= lo) throw config_error("uniform_omega_grid: need hi > lo and n >= 2");
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    return out;
}

}  // namespace rabsorb
