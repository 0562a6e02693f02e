#include "rabsorb/scan.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "rabsorb/dynamics.hpp"
#include "rabsorb/emission.hpp"
#include "rabsorb/errors.hpp"
#include "rabsorb/transform.hpp"

namespace rabsorb {

namespace {

double auto_dt(const TwoLevelSystem& sys, const PulseSpec& spec, double requested,
               double divisor) {
    const double fastest = std::max({std::abs(sys.epsilon_a), std::abs(sys.epsilon_b),
                                     spec.carrier_omega0});
    const double bound = 0.05 / fastest;
    return requested > 0.0 ? requested : bound / divisor;
}

double auto_padding(const PulseSpec& spec) {
    if (spec.order.is_flat_top()) return 0.1 * spec.duration_tau;
    // Envelope below 1e-8 at the grid edge.
    const double u =
        std::pow(2.0 * std::log(1e8) / std::numbers::ln2, 1.0 / (2.0 * spec.order.n()));
    return 0.5 * (u - 1.0) * spec.duration_tau;
}

// Snap dt so the pulse edges +-tau/2 land on grid points.
double snap_dt(double tau, double dt_target) {
    return 0.5 * tau / std::ceil(0.5 * tau / dt_target);
}

struct PointResult {
    std::vector<double> row;
    double photons = 0.0;
    std::pair<double, double> pops{1.0, 0.0};
    bool triplet = false;
};

PointResult run_point(const TwoLevelSystem& sys, const PulseSpec& spec,
                      ScanObservable observable, std::span<const double> omegas,
                      const ScanOptions& opts) {
    const double fastest = std::max({std::abs(sys.epsilon_a), std::abs(sys.epsilon_b),
                                     spec.carrier_omega0});
    const double dt = snap_dt(spec.duration_tau, auto_dt(sys, spec, opts.dt, 6.0));
    const TimeGrid grid = make_grid(spec.duration_tau, dt, auto_padding(spec), fastest);

    const AmplitudeTrajectory traj = propagate_numeric(sys, spec, grid);
    const Signal momentum = momentum_expectation(traj, sys);

    Signal efield{grid, std::vector<double>(grid.n_points)};
    Signal apot{grid, std::vector<double>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double t = grid.time_at(i);
        efield.values[i] = electric_field(spec, t);
        apot.values[i] = vector_potential(spec, t);
    }

    PointResult out;
    const Signal energy = absorption_time(efield, momentum);
    out.photons = photon_count(energy, spec.carrier_omega0);
    out.pops = {std::norm(traj.a.back()), std::norm(traj.b.back())};

    switch (observable) {
        case ScanObservable::Absorption: {
            const Signal atom_signal = opts.filter ? apply_filter(momentum, spec) : momentum;
            const Spectrum p_ft = fourier(atom_signal, omegas);
            const Spectrum a_ft = fourier(apot, omegas);
            out.row = absorption_spectrum(AbsorptionForm::Momentum, p_ft, a_ft);
            break;
        }
        case ScanObservable::Fluorescence: {
            const double omega_r = spec.peak_rabi(sys);
            const double gamma =
                opts.gamma_filter > 0.0 ? opts.gamma_filter : 0.05 * omega_r;
            FluorescenceSpectrum fluor =
                fluorescence(traj, gamma, spec.carrier_omega0, omegas);
            const LarmorSpectrum larm = larmor(acceleration(traj, sys), omegas);
            fluor = scale_fluorescence_to_larmor(std::move(fluor), larm);
            out.row = fluor.total;
            break;
        }
        case ScanObservable::Larmor: {
            out.row = larmor(acceleration(traj, sys), omegas).w_total;
            break;
        }
    }

    const double omega_r = spec.peak_rabi(sys);
    const double step = omegas.size() > 1 ? omegas[1] - omegas[0] : omega_r;
    if (omega_r / step >= 3.0) {
        out.triplet =
            find_triplet(omegas, out.row, spec.carrier_omega0, omega_r).is_triplet;
    }
    return out;
}

ScanResult run_scan_points(const TwoLevelSystem& sys, ScanAxis axis,
                           ScanObservable observable,
                           const std::vector<PulseSpec>& specs,
                           std::span<const double> axis_values,
                           std::span<const double> omegas, const ScanOptions& opts) {
    const std::size_t n = specs.size();
    ScanResult result;
    result.axis = axis;
    result.observable = observable;
    result.axis_values.assign(axis_values.begin(), axis_values.end());
    result.omegas.assign(omegas.begin(), omegas.end());
    result.spectra.resize(n);
    result.populations_final.resize(n);
    result.photons.resize(n);
    result.triplet_flags.assign(n, false);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::string failed_point;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::scoped_lock lock(error_mutex);
                if (first_error) return;
            }
            try {
                PointResult point = run_point(sys, specs[i], observable, omegas, opts);
                result.spectra[i] = std::move(point.row);
                result.populations_final[i] = point.pops;
                result.photons[i] = point.photons;
                result.triplet_flags[i] = point.triplet;
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                    failed_point = std::to_string(axis_values[i]);
                }
            }
        }
    };

    unsigned n_threads = opts.threads > 0 ? opts.threads : worker_count();
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::exception& e) {
            throw numeric_error("scan point at axis value " + failed_point +
                                " failed: " + e.what());
        }
    }
    return result;
}

}  // namespace

ScanResult scan_area(const TwoLevelSystem& sys, const PulseSpec& base,
                     ScanObservable observable, std::span<const double> areas_cycles,
                     std::span<const double> omegas, const ScanOptions& opts) {
    if (areas_cycles.size() < 2) throw config_error("scan_area: need at least 2 axis points");
    const double t_rabi = base.rabi_period(sys);
    const double shape = area_constant(base.order);
    std::vector<PulseSpec> specs;
    specs.reserve(areas_cycles.size());
    double prev = -1.0;
    for (double cycles : areas_cycles) {
        if (cycles <= 0.0) throw config_error("scan_area: areas must be positive");
        if (cycles <= prev) throw config_error("scan_area: axis must be strictly increasing");
        prev = cycles;
        PulseSpec spec = base;
        if (opts.area_sweep_by_amplitude) {
            // Fixed tau; theta = Omega0 A_n tau picks the amplitude.
            const double omega_r = 2.0 * std::numbers::pi * cycles / (shape * base.duration_tau);
            spec.amplitude_a0 = omega_r / (base.carrier_omega0 * sys.z_ba);
        } else {
            spec.duration_tau = cycles * t_rabi / shape;
        }
        specs.push_back(spec);
    }
    ScanResult result = run_scan_points(sys, ScanAxis::PulseAreaCycles, observable, specs,
                                        areas_cycles, omegas, opts);
    return result;
}

ScanResult scan_intensity(const TwoLevelSystem& sys, const PulseSpec& base,
                          std::span<const double> intensities_w_cm2,
                          std::span<const double> omegas, const ScanOptions& opts) {
    if (intensities_w_cm2.size() < 2)
        throw config_error("scan_intensity: need at least 2 axis points");
    std::vector<PulseSpec> specs;
    specs.reserve(intensities_w_cm2.size());
    bool beyond_two_level = false;
    double prev = 0.0;
    for (double intensity : intensities_w_cm2) {
        if (intensity <= 0.0) throw config_error("scan_intensity: intensities must be positive");
        if (intensity <= prev)
            throw config_error("scan_intensity: axis must be strictly increasing");
        prev = intensity;
        if (intensity > 1e13) beyond_two_level = true;
        PulseSpec spec = base;
        const double e0 = convert(intensity, Quantity::FieldAmplitude, Direction::ToAu);
        spec.amplitude_a0 = e0 / base.carrier_omega0;
        specs.push_back(spec);
    }
    ScanResult result = run_scan_points(sys, ScanAxis::Intensity, ScanObservable::Absorption,
                                        specs, intensities_w_cm2, omegas, opts);
    if (beyond_two_level)
        result.warnings.push_back(
            "intensities above 1e13 W/cm^2 exceed the validated two-level range");
    return result;
}

}  // namespace rabsorb
