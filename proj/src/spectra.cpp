#include "rabsorb/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabsorb/errors.hpp"

namespace rabsorb {

namespace {

bool same_grid(const TimeGrid& a, const TimeGrid& b) {
    return a.n_points == b.n_points && a.dt == b.dt && a.t_start == b.t_start;
}

}  // namespace

Signal absorption_time(const Signal& efield, const Signal& velocity) {
    if (!same_grid(efield.grid, velocity.grid))
        throw config_error("absorption_time: field and velocity grids differ");
    Signal out{efield.grid, std::vector<double>(efield.grid.n_points, 0.0)};
    const double half_dt = 0.5 * efield.grid.dt;
    double acc = 0.0;
    for (std::size_t i = 1; i < efield.grid.n_points; ++i) {
        acc -= half_dt * (efield.values[i - 1] * velocity.values[i - 1] +
                          efield.values[i] * velocity.values[i]);
        out.values[i] = acc;
    }
    return out;
}

std::vector<double> absorption_spectrum(AbsorptionForm form, const Spectrum& atom,
                                        const Spectrum& field) {
    if (atom.omegas.size() != field.omegas.size())
        throw config_error("absorption_spectrum: spectra live on different grids");
    std::vector<double> out(atom.omegas.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto cross = atom.values[i] * std::conj(field.values[i]);
        if (form == AbsorptionForm::Velocity)
            out[i] = -2.0 * cross.real();
        else
            out[i] = -2.0 * atom.omegas[i] * cross.imag();
    }
    return out;
}

std::vector<double> analytic_absorption_flat_top(const TwoLevelSystem& sys,
                                                 const PulseSpec& spec, double detuning,
                                                 InitialState init,
                                                 std::span<const double> omegas) {
    const Spectrum momentum = analytic_momentum_spectrum(sys, spec, detuning, init, omegas);
    const Spectrum potential = flat_top_potential_ft(spec, omegas);
    return absorption_spectrum(AbsorptionForm::Momentum, momentum, potential);
}

double photon_count(const Signal& time_energy, double omega0) {
    if (omega0 <= 0.0) throw config_error("photon_count: omega0 must be positive");
    if (time_energy.values.empty()) return 0.0;
    return time_energy.values.back() / omega0;
}

TripletReport find_triplet(std::span<const double> omegas, std::span<const double> values,
                           double omega0, double rabi_omega0, TripletParams params) {
    if (omegas.size() != values.size() || omegas.size() < 5)
        throw config_error("find_triplet: bad spectrum");
    const double step = omegas[1] - omegas[0];
    if (rabi_omega0 <= 0.0) throw config_error("find_triplet: Omega0 must be positive");
    if (rabi_omega0 / step < 3.0)
        throw numeric_error("find_triplet: fewer than 3 grid points per Rabi frequency; "
                            "refine the omega grid");

    double global_max = 0.0;
    for (double v : values) global_max = std::max(global_max, v);

    TripletReport report;
    if (global_max <= 0.0) return report;  // flat or purely emissive spectrum

    const double threshold = params.prominence_fraction * global_max;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > 0.0 && values[i] >= threshold && values[i] > values[i - 1] &&
            values[i] >= values[i + 1]) {
            report.peak_positions.push_back(omegas[i]);
            report.peak_heights.push_back(values[i]);
        }
    }

    if (report.peak_positions.size() != 3) return report;

    const double tol = params.side_tolerance_fraction * rabi_omega0;
    const double lo = report.peak_positions[0];
    const double mid = report.peak_positions[1];
    const double hi = report.peak_positions[2];
    const bool sides_ok = std::abs(lo - (omega0 - rabi_omega0)) <= tol &&
                          std::abs(hi - (omega0 + rabi_omega0)) <= tol &&
                          std::abs(mid - omega0) <= tol;
    if (sides_ok) {
        report.is_triplet = true;
        report.central_to_side_ratio =
            report.peak_heights[1] / (0.5 * (report.peak_heights[0] + report.peak_heights[2]));
    }
    return report;
}

}  // namespace rabsorb
