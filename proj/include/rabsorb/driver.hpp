// Run configuration and orchestration: everything the external surfaces (C
// API, CLI) need, with units converted once at this boundary (eV, fs, W/cm^2
// in; atomic units inside).
#ifndef RABSORB_DRIVER_HPP
#define RABSORB_DRIVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rabsorb/emission.hpp"
#include "rabsorb/scan.hpp"
#include "rabsorb/spectra.hpp"

namespace rabsorb {

struct RunConfig {
    // system
    double epsilon_ba_ev = 10.2;
    double z_ba = 0.745;

    // pulse: exactly one of intensity/amplitude and one of omega0/detuning
    // must be set (defaults: intensity 1e12, detuning 0); one of tau/area.
    std::optional<double> intensity_w_cm2;
    std::optional<double> amplitude_a0;
    std::optional<double> omega0_ev;
    std::optional<double> detuning_ev;
    std::optional<double> tau_fs;
    std::optional<double> area_cycles;
    std::string order = "flat";  // "flat" or a positive integer
    double cep_phi = 0.0;

    // numerics
    double dt_au = 0.0;        // 0: stability bound / 16 (scans: / 6)
    double padding_au = -1.0;  // < 0: auto from the envelope decay
    double omega_window_rabi = 3.0;  // spectra span omega0 +- this * Omega0
    std::size_t omega_points = 2001;
    bool filter = true;

    // model
    std::string model = "numeric";  // numeric | analytic | heff
    double gamma_a = 0.0;           // heff decay rates (a.u.)
    double gamma_b = 0.0;
    double delta_r_re = 0.0;        // heff coupling correction (a.u.)
    double delta_r_im = 0.0;

    // emission
    bool emission = true;
    double gamma_filter_rabi = 0.05;  // Gamma_F in units of Omega0

    // scan
    std::string scan_axis = "area";  // area | intensity
    std::string scan_observable = "absorption";
    double scan_min = 0.1;   // cycles, or W/cm^2 for intensity
    double scan_max = 4.0;
    std::size_t scan_points = 81;
    bool scan_log_axis = false;  // log-spaced axis (intensity scans)

    // output
    double linthresh_fraction = 1e-3;  // symmetric-log threshold, of |max|
    std::size_t max_timeseries_rows = 50000;
    unsigned threads = 0;  // 0: RABI_ABSORB_THREADS or hardware
};

// Named presets reproducing the headline figures; throws config_error for an
// unknown name. Valid names: fig1a, fig1e, fig1f, fig1g, fig3b, fig3c, fig3d.
void apply_preset(RunConfig& config, const std::string& name);

// Plain-text config: "[section]" headers with "key = value" lines, '#'
// comments. Keys are the field names above, sections system/pulse/numerics/
// model/emission/scan/output.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Sets one field via "section.key" (flag overrides). Unknown key: config_error.
void set_config_value(RunConfig& config, const std::string& dotted_key,
                      const std::string& value);

// Validates cross-field invariants; throws config_error naming the field.
void validate(const RunConfig& config);

// Canonical text form (sorted, normalised numbers) and its FNV-1a 64-bit hash.
// Identical configs give byte-identical canonical text.
std::string canonical_text(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);
std::uint64_t fnv1a64(const std::string& text);

// Resolved physical inputs.
TwoLevelSystem make_system(const RunConfig& config);
PulseSpec make_pulse(const RunConfig& config);
double resolved_detuning(const RunConfig& config);  // a.u.

struct SimulationOutput {
    Signal efield, apot, momentum, pop_a, pop_b, denergy;  // shared grid
    std::vector<double> omegas;
    std::vector<double> absorption;
    std::optional<FluorescenceSpectrum> fluor;
    std::optional<LarmorSpectrum> larmor_spectrum;
    MollowConditionReport condition{};
    TripletReport triplet;
    double theta = 0.0;        // pulse area (rad)
    double cycles = 0.0;       // theta / 2 pi
    double t_rabi_fs = 0.0;
    double photons = 0.0;
    std::vector<std::string> warnings;
    std::string metadata_json;  // config echo + hash + derived numbers
};

SimulationOutput run_simulation(const RunConfig& config);

struct ScanOutput {
    ScanResult result;
    std::string metadata_json;
};

ScanOutput run_scan(const RunConfig& config);

struct ConditionRow {
    std::string order;  // "1", "2", ..., "flat"
    double area_constant;
    double bandwidth_constant;  // +inf encoded as infinity
    double ratio;
    bool satisfied;
};

// Condition table for orders 1..max_order plus the flat top.
std::vector<ConditionRow> condition_table(const RunConfig& config, int max_order = 6);

struct PulseAnalysis {
    Signal envelope;           // L_n(t)
    Signal envelope_sq_deriv;  // d(L_n^2)/dt
    std::vector<double> omegas;
    std::vector<double> envelope_power;  // |L_n(w)|^2
    double tau_prime = 0.0;
    double area_const = 0.0;
    double bandwidth_const = 0.0;
    std::string metadata_json;
};

PulseAnalysis pulse_analysis(const RunConfig& config);

}  // namespace rabsorb

#endif
