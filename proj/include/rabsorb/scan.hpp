// Parameter sweeps over pulse area (at fixed intensity) and intensity (at
// fixed duration), with per-point observables. Points run on a bounded worker
// pool; rows are keyed by index, so results are independent of scheduling.
#ifndef RABSORB_SCAN_HPP
#define RABSORB_SCAN_HPP

#include <span>
#include <string>
#include <vector>

#include "rabsorb/pulse.hpp"
#include "rabsorb/spectra.hpp"
#include "rabsorb/two_level_system.hpp"

namespace rabsorb {

enum class ScanAxis { PulseAreaCycles, Intensity };
enum class ScanObservable { Absorption, Fluorescence, Larmor };

struct ScanOptions {
    double dt = 0.0;             // 0: auto (stability bound / 6)
    bool filter = true;          // envelope filter before transforming
    unsigned threads = 0;        // 0: worker_count()
    double gamma_filter = 0.0;   // 0: 0.05 * Omega0 (fluorescence only)
    bool area_sweep_by_amplitude = false;  // sweep A0 instead of tau
};

struct ScanResult {
    ScanAxis axis;
    ScanObservable observable;
    std::vector<double> axis_values;
    std::vector<double> omegas;
    std::vector<std::vector<double>> spectra;  // one row per axis value
    std::vector<std::pair<double, double>> populations_final;  // (|a|^2, |b|^2)
    std::vector<double> photons;
    std::vector<bool> triplet_flags;
    std::vector<std::string> warnings;
};

// One spectrum row per pulse area (in completed Rabi cycles theta/2pi). The
// area is reached by scaling tau at fixed amplitude: tau = cycles T_Rabi / A_n
// (or by scaling A0 at fixed tau behind the option flag). A failed point
// aborts with the offending area named.
ScanResult scan_area(const TwoLevelSystem& sys, const PulseSpec& base,
                     ScanObservable observable, std::span<const double> areas_cycles,
                     std::span<const double> omegas, const ScanOptions& opts = {});

// One row per intensity (W/cm^2) at fixed duration. Rows above 1e13 W/cm^2
// carry a two-level validity warning in the result metadata.
ScanResult scan_intensity(const TwoLevelSystem& sys, const PulseSpec& base,
                          std::span<const double> intensities_w_cm2,
                          std::span<const double> omegas, const ScanOptions& opts = {});

}  // namespace rabsorb

#endif
