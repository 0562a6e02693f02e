// Absorption observables: time-domain exchanged energy, frequency-resolved
// absorption in velocity and momentum form, the closed-form flat-top spectrum,
// photon counting and triplet peak analysis.
#ifndef RABSORB_SPECTRA_HPP
#define RABSORB_SPECTRA_HPP

#include <span>
#include <vector>

#include "rabsorb/dynamics.hpp"
#include "rabsorb/signal.hpp"

namespace rabsorb {

// Cumulative exchanged energy dE(t) = -integral_-inf^t E(t') v(t') dt'
// (trapezoid). Throws config_error on grid mismatch.
Signal absorption_time(const Signal& efield, const Signal& velocity);

enum class AbsorptionForm {
    Velocity,  // dE(w) = -2 Re[v(w) E*(w)]
    Momentum,  // dE(w) = -2 w Im[p(w) A*(w)]
};

// Real-valued absorption spectrum from the atomic response and field spectra.
// For Velocity pass the electric-field transform, for Momentum the potential
// transform; both forms agree because the pure-field cross term is real.
// Positive values mean absorption, negative emission.
std::vector<double> absorption_spectrum(AbsorptionForm form, const Spectrum& atom,
                                        const Spectrum& field);

// Closed-form flat-top absorption: -2 w Im[p(w) A*(w)] with the sinc-line
// momentum spectrum and the closed-form potential transform. For a pure
// ground-state start this is the two-term split with sideband weights
// (1 +- dw/W).
std::vector<double> analytic_absorption_flat_top(const TwoLevelSystem& sys,
                                                 const PulseSpec& spec, double detuning,
                                                 InitialState init,
                                                 std::span<const double> omegas);

// Number of absorbed photons dE(t_end) / w0.
double photon_count(const Signal& time_energy, double omega0);

struct AbsorptionResult {
    Signal time_energy;            // dE(t)
    std::vector<double> omegas;    // shared frequency grid
    std::vector<double> spectrum;  // dE(w)
    double photons = 0.0;          // dE(t_end)/w0
    bool filtered = false;
    bool boundary_warning = false;
};

struct TripletParams {
    double prominence_fraction = 0.05;  // of the global positive maximum
    double side_tolerance_fraction = 0.15;  // of Omega0, on side positions
};

struct TripletReport {
    std::vector<double> peak_positions;  // positive peaks, sorted by frequency
    std::vector<double> peak_heights;
    double central_to_side_ratio = 0.0;
    bool is_triplet = false;
};

// Local-maximum scan with a prominence threshold. is_triplet requires exactly
// three positive peaks with the side peaks within the position tolerance of
// w0 +- Omega0 (ties toward larger height). Throws numeric_error when Omega0
// spans fewer than 3 grid steps.
TripletReport find_triplet(std::span<const double> omegas, std::span<const double> values,
                           double omega0, double rabi_omega0, TripletParams params = {});

}  // namespace rabsorb

#endif
