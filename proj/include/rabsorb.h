/*
 * rabsorb — resonant-absorption simulator for driven two-level atoms.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed here; all functions returning int use the rabsorb_status codes
 * below. On any failure a thread-local message is available through
 * rabsorb_last_error(). Arrays are copied into caller buffers sized by the
 * matching *_count query. Strings returned as const char* are owned by the
 * handle they came from and stay valid until it is freed.
 */
#ifndef RABSORB_H
#define RABSORB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RABSORB_API __declspec(dllexport)
#else
#define RABSORB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rabsorb_status {
    RABSORB_OK = 0,
    RABSORB_ERR_CONFIG = 1,  /* invalid configuration or argument values */
    RABSORB_ERR_NUMERIC = 2, /* numerical failure during a run */
    RABSORB_ERR_IO = 3,      /* file could not be read */
    RABSORB_ERR_OTHER = 4
} rabsorb_status;

typedef struct rabsorb_config rabsorb_config;
typedef struct rabsorb_run rabsorb_run;
typedef struct rabsorb_scan rabsorb_scan;
typedef struct rabsorb_pulse_report rabsorb_pulse_report;

RABSORB_API const char* rabsorb_version(void);

/* Message describing the most recent failure on this thread ("" if none). */
RABSORB_API const char* rabsorb_last_error(void);

/* ---- configuration ----------------------------------------------------- */

/* New config holding the library defaults (hydrogen 1s-2p, 1e12 W/cm^2,
 * resonant flat-top pulse of 1.5 Rabi cycles). Never fails. */
RABSORB_API rabsorb_config* rabsorb_config_new(void);
RABSORB_API void rabsorb_config_free(rabsorb_config* cfg);

/* Parse a config file ([section] + key = value lines) into a new handle. */
RABSORB_API rabsorb_config* rabsorb_config_load(const char* path);

/* Set one field by dotted key, e.g. "pulse.intensity_w_cm2", "pulse.order",
 * "model.model", "scan.scan_points". Values are parsed from text. */
RABSORB_API int rabsorb_config_set(rabsorb_config* cfg, const char* key, const char* value);

/* Apply a named preset: fig1a fig1e fig1f fig1g fig3b fig3c fig3d. */
RABSORB_API int rabsorb_config_apply_preset(rabsorb_config* cfg, const char* name);

/* Cross-field validation; RABSORB_ERR_CONFIG with a field-level message. */
RABSORB_API int rabsorb_config_validate(const rabsorb_config* cfg);

/* Canonical text form of the config and its FNV-1a 64-bit hash. The pointer
 * is owned by the handle and refreshed by this call. */
RABSORB_API const char* rabsorb_config_canonical(rabsorb_config* cfg);
RABSORB_API int rabsorb_config_hash(const rabsorb_config* cfg, uint64_t* hash_out);

/* ---- single simulation -------------------------------------------------- */

typedef enum rabsorb_time_column {
    RABSORB_COL_TIME = 0,
    RABSORB_COL_EFIELD = 1,
    RABSORB_COL_APOT = 2,
    RABSORB_COL_MOMENTUM = 3,
    RABSORB_COL_POP_A = 4,
    RABSORB_COL_POP_B = 5,
    RABSORB_COL_ENERGY = 6
} rabsorb_time_column;

typedef enum rabsorb_spectrum_column {
    RABSORB_SPEC_OMEGA = 0,
    RABSORB_SPEC_ABSORPTION = 1,
    RABSORB_SPEC_FLUOR_SEMI = 2,
    RABSORB_SPEC_FLUOR_QUANT = 3,
    RABSORB_SPEC_FLUOR_TOTAL = 4,
    RABSORB_SPEC_LARMOR = 5
} rabsorb_spectrum_column;

/* Run one simulation (model per config: numeric | analytic | heff). */
RABSORB_API rabsorb_run* rabsorb_simulate(const rabsorb_config* cfg);
RABSORB_API void rabsorb_run_free(rabsorb_run* run);

RABSORB_API size_t rabsorb_run_time_count(const rabsorb_run* run);
RABSORB_API int rabsorb_run_time_column(const rabsorb_run* run, rabsorb_time_column col,
                                        double* out, size_t capacity);

RABSORB_API size_t rabsorb_run_omega_count(const rabsorb_run* run);
/* Emission columns are present only when the config asked for them; probing
 * an absent column returns RABSORB_ERR_CONFIG. */
RABSORB_API int rabsorb_run_has_emission(const rabsorb_run* run);
RABSORB_API int rabsorb_run_spectrum_column(const rabsorb_run* run,
                                            rabsorb_spectrum_column col, double* out,
                                            size_t capacity);

/* Metadata JSON: config echo, config_hash, pulse area, Rabi period, shape
 * constants, condition verdict, photon count, triplet report, warnings. */
RABSORB_API const char* rabsorb_run_metadata_json(const rabsorb_run* run);

/* ---- parameter scans ----------------------------------------------------- */

RABSORB_API rabsorb_scan* rabsorb_scan_run(const rabsorb_config* cfg);
RABSORB_API void rabsorb_scan_free(rabsorb_scan* scan);

RABSORB_API size_t rabsorb_scan_axis_count(const rabsorb_scan* scan);
RABSORB_API size_t rabsorb_scan_omega_count(const rabsorb_scan* scan);
RABSORB_API int rabsorb_scan_axis(const rabsorb_scan* scan, double* out, size_t capacity);
RABSORB_API int rabsorb_scan_omegas(const rabsorb_scan* scan, double* out, size_t capacity);
RABSORB_API int rabsorb_scan_row(const rabsorb_scan* scan, size_t index, double* out,
                                 size_t capacity);
RABSORB_API int rabsorb_scan_photons(const rabsorb_scan* scan, double* out, size_t capacity);
/* 0/1 per axis point. */
RABSORB_API int rabsorb_scan_triplet_flags(const rabsorb_scan* scan, int* out,
                                           size_t capacity);
/* Final populations interleaved (|a|^2, |b|^2) per point: capacity >= 2n. */
RABSORB_API int rabsorb_scan_populations(const rabsorb_scan* scan, double* out,
                                         size_t capacity);
RABSORB_API const char* rabsorb_scan_metadata_json(const rabsorb_scan* scan);

/* ---- pulse analysis and the admissibility condition ---------------------- */

typedef struct rabsorb_condition {
    double area_constant;      /* A_n */
    double bandwidth_constant; /* B_n, HUGE_VAL for the flat top */
    double ratio;              /* tau / T_Rabi */
    int satisfied;
    double margin_low;
    double margin_high;
} rabsorb_condition;

/* Condition report for the order given as "1", "2", ..., or "flat";
 * NULL order uses the config's pulse order. */
RABSORB_API int rabsorb_condition_report(const rabsorb_config* cfg, const char* order,
                                         rabsorb_condition* out);

RABSORB_API rabsorb_pulse_report* rabsorb_pulse_analyze(const rabsorb_config* cfg);
RABSORB_API void rabsorb_pulse_report_free(rabsorb_pulse_report* report);

RABSORB_API size_t rabsorb_pulse_time_count(const rabsorb_pulse_report* report);
RABSORB_API size_t rabsorb_pulse_omega_count(const rabsorb_pulse_report* report);
/* col 0: t, 1: envelope, 2: d(envelope^2)/dt. */
RABSORB_API int rabsorb_pulse_time_column(const rabsorb_pulse_report* report, int col,
                                          double* out, size_t capacity);
/* col 0: omega, 1: |envelope transform|^2. */
RABSORB_API int rabsorb_pulse_spectrum_column(const rabsorb_pulse_report* report, int col,
                                              double* out, size_t capacity);
RABSORB_API const char* rabsorb_pulse_metadata_json(const rabsorb_pulse_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RABSORB_H */
