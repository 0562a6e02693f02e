// extern-C surface of the shared library: opaque handles over the driver.
#include "rabsorb.h"

#include <cmath>
#include <cstring>
#include <string>

#include "rabsorb/driver.hpp"
#include "rabsorb/errors.hpp"

namespace {

thread_local std::string g_last_error;

int map_exception() {
    try {
        throw;
    } catch (const rabsorb::config_error& e) {
        g_last_error = e.what();
        return RABSORB_ERR_CONFIG;
    } catch (const rabsorb::numeric_error& e) {
        g_last_error = e.what();
        return RABSORB_ERR_NUMERIC;
    } catch (const rabsorb::io_error& e) {
        g_last_error = e.what();
        return RABSORB_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RABSORB_ERR_OTHER;
    } catch (...) {
        g_last_error = "unknown error";
        return RABSORB_ERR_OTHER;
    }
}

int copy_out(const std::vector<double>& src, double* out, size_t capacity) {
    if (out == nullptr || capacity < src.size()) {
        g_last_error = "output buffer too small";
        return RABSORB_ERR_CONFIG;
    }
    std::memcpy(out, src.data(), src.size() * sizeof(double));
    return RABSORB_OK;
}

}  // namespace

struct rabsorb_config {
    rabsorb::RunConfig config;
    std::string canonical;
};

struct rabsorb_run {
    rabsorb::SimulationOutput output;
    std::vector<double> times;
};

struct rabsorb_scan {
    rabsorb::ScanOutput output;
};

struct rabsorb_pulse_report {
    rabsorb::PulseAnalysis analysis;
    std::vector<double> times;
};

extern "C" {

const char* rabsorb_version(void) { return "0.1.0"; }

const char* rabsorb_last_error(void) { return g_last_error.c_str(); }

rabsorb_config* rabsorb_config_new(void) {
    auto* cfg = new rabsorb_config();
    cfg->config.intensity_w_cm2 = 1e12;
    cfg->config.detuning_ev = 0.0;
    cfg->config.area_cycles = 1.5;
    return cfg;
}

void rabsorb_config_free(rabsorb_config* cfg) { delete cfg; }

rabsorb_config* rabsorb_config_load(const char* path) {
    if (path == nullptr) {
        g_last_error = "path is null";
        return nullptr;
    }
    try {
        auto* cfg = new rabsorb_config();
        cfg->config = rabsorb::load_config_file(path);
        return cfg;
    } catch (...) {
        map_exception();
        return nullptr;
    }
}

int rabsorb_config_set(rabsorb_config* cfg, const char* key, const char* value) {
    if (cfg == nullptr || key == nullptr || value == nullptr) {
        g_last_error = "null argument";
        return RABSORB_ERR_CONFIG;
    }
    try {
        rabsorb::set_config_value(cfg->config, key, value);
        return RABSORB_OK;
    } catch (...) {
        return map_exception();
    }
}

int rabsorb_config_apply_preset(rabsorb_config* cfg, const char* name) {
    if (cfg == nullptr || name == nullptr) {
        g_last_error = "null argument";
        return RABSORB_ERR_CONFIG;
    }
    try {
        rabsorb::apply_preset(cfg->config, name);
        return RABSORB_OK;
    } catch (...) {
        return map_exception();
    }
}

int rabsorb_config_validate(const rabsorb_config* cfg) {
    if (cfg == nullptr) {
        g_last_error = "null config";
        return RABSORB_ERR_CONFIG;
    }
    try {
        rabsorb::validate(cfg->config);
        return RABSORB_OK;
    } catch (...) {
        return map_exception();
    }
}

const char* rabsorb_config_canonical(rabsorb_config* cfg) {
    if (cfg == nullptr) return nullptr;
    cfg->canonical = rabsorb::canonical_text(cfg->config);
    return cfg->canonical.c_str();
}

int rabsorb_config_hash(const rabsorb_config* cfg, uint64_t* hash_out) {
    if (cfg == nullptr || hash_out == nullptr) {
        g_last_error = "null argument";
        return RABSORB_ERR_CONFIG;
    }
    *hash_out = rabsorb::config_hash(cfg->config);
    return RABSORB_OK;
}

rabsorb_run* rabsorb_simulate(const rabsorb_config* cfg) {
    if (cfg == nullptr) {
        g_last_error = "null config";
        return nullptr;
    }
    try {
        auto* run = new rabsorb_run();
        run->output = rabsorb::run_simulation(cfg->config);
        run->times = run->output.efield.grid.times();
        return run;
    } catch (...) {
        map_exception();
        return nullptr;
    }
}

void rabsorb_run_free(rabsorb_run* run) { delete run; }

size_t rabsorb_run_time_count(const rabsorb_run* run) {
    return run == nullptr ? 0 : run->times.size();
}

int rabsorb_run_time_column(const rabsorb_run* run, rabsorb_time_column col, double* out,
                            size_t capacity) {
    if (run == nullptr) {
        g_last_error = "null run";
        return RABSORB_ERR_CONFIG;
    }
    switch (col) {
        case RABSORB_COL_TIME: return copy_out(run->times, out, capacity);
        case RABSORB_COL_EFIELD: return copy_out(run->output.efield.values, out, capacity);
        case RABSORB_COL_APOT: return copy_out(run->output.apot.values, out, capacity);
        case RABSORB_COL_MOMENTUM: return copy_out(run->output.momentum.values, out, capacity);
        case RABSORB_COL_POP_A: return copy_out(run->output.pop_a.values, out, capacity);
        case RABSORB_COL_POP_B: return copy_out(run->output.pop_b.values, out, capacity);
        case RABSORB_COL_ENERGY: return copy_out(run->output.denergy.values, out, capacity);
    }
    g_last_error = "unknown time column";
    return RABSORB_ERR_CONFIG;
}

size_t rabsorb_run_omega_count(const rabsorb_run* run) {
    return run == nullptr ? 0 : run->output.omegas.size();
}

int rabsorb_run_has_emission(const rabsorb_run* run) {
    return run != nullptr && run->output.fluor.has_value() ? 1 : 0;
}

int rabsorb_run_spectrum_column(const rabsorb_run* run, rabsorb_spectrum_column col,
                                double* out, size_t capacity) {
    if (run == nullptr) {
        g_last_error = "null run";
        return RABSORB_ERR_CONFIG;
    }
    const auto& o = run->output;
    const bool emission = o.fluor.has_value();
    switch (col) {
        case RABSORB_SPEC_OMEGA: return copy_out(o.omegas, out, capacity);
        case RABSORB_SPEC_ABSORPTION: return copy_out(o.absorption, out, capacity);
        case RABSORB_SPEC_FLUOR_SEMI:
            if (!emission) break;
            return copy_out(o.fluor->s_semiclassical, out, capacity);
        case RABSORB_SPEC_FLUOR_QUANT:
            if (!emission) break;
            return copy_out(o.fluor->s_quantum, out, capacity);
        case RABSORB_SPEC_FLUOR_TOTAL:
            if (!emission) break;
            return copy_out(o.fluor->total, out, capacity);
        case RABSORB_SPEC_LARMOR:
            if (!o.larmor_spectrum.has_value()) break;
            return copy_out(o.larmor_spectrum->w_total, out, capacity);
    }
    g_last_error = "spectrum column not available for this run";
    return RABSORB_ERR_CONFIG;
}

const char* rabsorb_run_metadata_json(const rabsorb_run* run) {
    return run == nullptr ? nullptr : run->output.metadata_json.c_str();
}

rabsorb_scan* rabsorb_scan_run(const rabsorb_config* cfg) {
    if (cfg == nullptr) {
        g_last_error = "null config";
        return nullptr;
    }
    try {
        auto* scan = new rabsorb_scan();
        scan->output = rabsorb::run_scan(cfg->config);
        return scan;
    } catch (...) {
        map_exception();
        return nullptr;
    }
}

void rabsorb_scan_free(rabsorb_scan* scan) { delete scan; }

size_t rabsorb_scan_axis_count(const rabsorb_scan* scan) {
    return scan == nullptr ? 0 : scan->output.result.axis_values.size();
}

size_t rabsorb_scan_omega_count(const rabsorb_scan* scan) {
    return scan == nullptr ? 0 : scan->output.result.omegas.size();
}

int rabsorb_scan_axis(const rabsorb_scan* scan, double* out, size_t capacity) {
    if (scan == nullptr) {
        g_last_error = "null scan";
        return RABSORB_ERR_CONFIG;
    }
    return copy_out(scan->output.result.axis_values, out, capacity);
}

int rabsorb_scan_omegas(const rabsorb_scan* scan, double* out, size_t capacity) {
    if (scan == nullptr) {
        g_last_error = "null scan";
        return RABSORB_ERR_CONFIG;
    }
    return copy_out(scan->output.result.omegas, out, capacity);
}

int rabsorb_scan_row(const rabsorb_scan* scan, size_t index, double* out, size_t capacity) {
    if (scan == nullptr) {
        g_last_error = "null scan";
        return RABSORB_ERR_CONFIG;
    }
    const auto& rows = scan->output.result.spectra;
    if (index >= rows.size()) {
        g_last_error = "row index out of range";
        return RABSORB_ERR_CONFIG;
    }
    return copy_out(rows[index], out, capacity);
}

int rabsorb_scan_photons(const rabsorb_scan* scan, double* out, size_t capacity) {
    if (scan == nullptr) {
        g_last_error = "null scan";
        return RABSORB_ERR_CONFIG;
    }
    return copy_out(scan->output.result.photons, out, capacity);
}

int rabsorb_scan_triplet_flags(const rabsorb_scan* scan, int* out, size_t capacity) {
    if (scan == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RABSORB_ERR_CONFIG;
    }
    const auto& flags = scan->output.result.triplet_flags;
    if (capacity < flags.size()) {
        g_last_error = "output buffer too small";
        return RABSORB_ERR_CONFIG;
    }
    for (size_t i = 0; i < flags.size(); ++i) out[i] = flags[i] ? 1 : 0;
    return RABSORB_OK;
}

int rabsorb_scan_populations(const rabsorb_scan* scan, double* out, size_t capacity) {
    if (scan == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RABSORB_ERR_CONFIG;
    }
    const auto& pops = scan->output.result.populations_final;
    if (capacity < 2 * pops.size()) {
        g_last_error = "output buffer too small";
        return RABSORB_ERR_CONFIG;
    }
    for (size_t i = 0; i < pops.size(); ++i) {
        out[2 * i] = pops[i].first;
        out[2 * i + 1] = pops[i].second;
    }
    return RABSORB_OK;
}

const char* rabsorb_scan_metadata_json(const rabsorb_scan* scan) {
    return scan == nullptr ? nullptr : scan->output.metadata_json.c_str();
}

int rabsorb_condition_report(const rabsorb_config* cfg, const char* order,
                             rabsorb_condition* out) {
    if (cfg == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return RABSORB_ERR_CONFIG;
    }
    try {
        rabsorb::RunConfig config = cfg->config;
        if (order != nullptr) config.order = order;
        rabsorb::validate(config);
        const auto sys = rabsorb::make_system(config);
        const auto spec = rabsorb::make_pulse(config);
        const auto report = rabsorb::mollow_condition(spec, sys);
        out->area_constant = report.area_constant;
        out->bandwidth_constant = report.bandwidth_constant;
        out->ratio = report.ratio;
        out->satisfied = report.satisfied ? 1 : 0;
        out->margin_low = report.margin_low;
        out->margin_high = report.margin_high;
        return RABSORB_OK;
    } catch (...) {
        return map_exception();
    }
}

rabsorb_pulse_report* rabsorb_pulse_analyze(const rabsorb_config* cfg) {
    if (cfg == nullptr) {
        g_last_error = "null config";
        return nullptr;
    }
    try {
        auto* report = new rabsorb_pulse_report();
        report->analysis = rabsorb::pulse_analysis(cfg->config);
        report->times = report->analysis.envelope.grid.times();
        return report;
    } catch (...) {
        map_exception();
        return nullptr;
    }
}

void rabsorb_pulse_report_free(rabsorb_pulse_report* report) { delete report; }

size_t rabsorb_pulse_time_count(const rabsorb_pulse_report* report) {
    return report == nullptr ? 0 : report->times.size();
}

size_t rabsorb_pulse_omega_count(const rabsorb_pulse_report* report) {
    return report == nullptr ? 0 : report->analysis.omegas.size();
}

int rabsorb_pulse_time_column(const rabsorb_pulse_report* report, int col, double* out,
                              size_t capacity) {
    if (report == nullptr) {
        g_last_error = "null report";
        return RABSORB_ERR_CONFIG;
    }
    switch (col) {
        case 0: return copy_out(report->times, out, capacity);
        case 1: return copy_out(report->analysis.envelope.values, out, capacity);
        case 2: return copy_out(report->analysis.envelope_sq_deriv.values, out, capacity);
    }
    g_last_error = "unknown pulse time column";
    return RABSORB_ERR_CONFIG;
}

int rabsorb_pulse_spectrum_column(const rabsorb_pulse_report* report, int col, double* out,
                                  size_t capacity) {
    if (report == nullptr) {
        g_last_error = "null report";
        return RABSORB_ERR_CONFIG;
    }
    switch (col) {
        case 0: return copy_out(report->analysis.omegas, out, capacity);
        case 1: return copy_out(report->analysis.envelope_power, out, capacity);
    }
    g_last_error = "unknown pulse spectrum column";
    return RABSORB_ERR_CONFIG;
}

const char* rabsorb_pulse_metadata_json(const rabsorb_pulse_report* report) {
    return report == nullptr ? nullptr : report->analysis.metadata_json.c_str();
}

}  // extern "C"
