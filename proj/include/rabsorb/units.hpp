// Atomic-unit bookkeeping: conversion constants, scalar conversions and the
// simulation time grid. Everything downstream works in Hartree atomic units.
#ifndef RABSORB_UNITS_HPP
#define RABSORB_UNITS_HPP

#include <cstddef>
#include <vector>

namespace rabsorb {

// CODATA-2018 values, truncated to the precision we pin for reproducibility.
struct UnitConstants {
    double hartree_in_ev;             // eV per hartree
    double atomic_time_in_fs;         // fs per atomic time unit
    double atomic_intensity_in_w_cm2; // W/cm^2 per atomic intensity unit
    double speed_of_light_au;         // 1/alpha
};

inline constexpr UnitConstants units{27.211386, 2.4188843e-2, 3.50945e16, 137.036};

enum class Quantity { Energy, Time, Intensity, FieldAmplitude };
enum class Direction { ToAu, FromAu };

// Scalar conversion between human units (eV, fs, W/cm^2) and atomic units.
// FieldAmplitude converts an intensity in W/cm^2 to the peak electric field
// E0 = sqrt(I / I_au) and back. Throws config_error for negative intensity.
double convert(double value, Quantity quantity, Direction direction);

// Uniform time grid, symmetric about the pulse centre t = 0.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
    std::size_t n_points = 0;

    double time_at(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
    std::vector<double> times() const;
};

// Builds a grid covering [-window/2 - padding, +window/2 + padding] that
// contains t = 0 exactly. max_abs_energy is the fastest phase in the problem,
// max(|eps_a|, |eps_b|, omega0); dt must satisfy dt <= 0.05 / max_abs_energy
// or a config_error naming the bound is thrown.
TimeGrid make_grid(double pulse_window, double dt, double padding, double max_abs_energy);

}  // namespace rabsorb

#endif
