#include "rabsorb/units.hpp"

#include <cmath>
#include <string>

#include "rabsorb/errors.hpp"

namespace rabsorb {

double convert(double value, Quantity quantity, Direction direction) {
    if (!std::isfinite(value)) throw config_error("convert: value is not finite");
    switch (quantity) {
        case Quantity::Energy:
            return direction == Direction::ToAu ? value / units.hartree_in_ev
                                                : value * units.hartree_in_ev;
        case Quantity::Time:
            return direction == Direction::ToAu ? value / units.atomic_time_in_fs
                                                : value * units.atomic_time_in_fs;
        case Quantity::Intensity:
            if (value < 0.0) throw config_error("convert: intensity must be non-negative");
            return direction == Direction::ToAu ? value / units.atomic_intensity_in_w_cm2
                                                : value * units.atomic_intensity_in_w_cm2;
        case Quantity::FieldAmplitude:
            // intensity (W/cm^2) <-> peak field E0 (a.u.)
            if (value < 0.0) throw config_error("convert: intensity must be non-negative");
            return direction == Direction::ToAu
                       ? std::sqrt(value / units.atomic_intensity_in_w_cm2)
                       : value * value * units.atomic_intensity_in_w_cm2;
    }
    throw config_error("convert: unknown quantity");
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = time_at(i);
    return out;
}

TimeGrid make_grid(double pulse_window, double dt, double padding, double max_abs_energy) {
    if (pulse_window <= 0.0) throw config_error("make_grid: pulse window must be positive");
    if (dt <= 0.0) throw config_error("make_grid: dt must be positive");
    if (padding < 0.0) throw config_error("make_grid: padding must be non-negative");
    if (max_abs_energy > 0.0) {
        const double bound = 0.05 / max_abs_energy;
        if (dt > bound) {
            throw config_error("make_grid: dt = " + std::to_string(dt) +
                               " violates the phase-resolution bound dt <= 0.05/max|eps| = " +
                               std::to_string(bound));
        }
    }
    const double half = 0.5 * pulse_window + padding;
    // Round up so the grid covers the window; tolerate representation noise
    // when half/dt is an exact integer.
    auto n_half = static_cast<std::size_t>(std::ceil(half / dt - 1e-9));
    TimeGrid grid;
    grid.dt = dt;
    grid.t_start = -static_cast<double>(n_half) * dt;
    grid.t_end = static_cast<double>(n_half) * dt;
    grid.n_points = 2 * n_half + 1;
    return grid;
}

}  // namespace rabsorb
