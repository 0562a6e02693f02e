// rabsorb command-line frontend. Talks to the core exclusively through the
// shared library's C API (rabsorb.h) and owns all file serialisation.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rabsorb.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
    throw CliError{code, message};
}

[[noreturn]] void fail_api(int status) {
    fail(status == RABSORB_OK ? 4 : status, rabsorb_last_error());
}

using ConfigPtr = std::unique_ptr<rabsorb_config, decltype(&rabsorb_config_free)>;

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::string model;
    std::string order;
    std::optional<double> area_cycles;
    std::optional<double> intensity;
    std::optional<double> tau_fs;
    std::optional<double> cep;
    std::optional<double> detuning_ev;
    bool no_filter = false;
    std::vector<std::string> sets;  // raw key=value overrides
    std::string out_dir = "out";
    std::string format = "all";  // csv | json | svg | all
    bool force = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Config file (INI-style sections)");
    cmd->add_option("--preset", flags.preset,
                    "Preset: fig1a fig1e fig1f fig1g fig3b fig3c fig3d");
    cmd->add_option("--model", flags.model, "Model: numeric | analytic | heff");
    cmd->add_option("--order", flags.order, "Envelope order: positive integer or 'flat'");
    cmd->add_option("--area-cycles", flags.area_cycles, "Pulse area in Rabi cycles");
    cmd->add_option("--intensity", flags.intensity, "Peak intensity in W/cm^2");
    cmd->add_option("--tau-fs", flags.tau_fs, "Pulse duration (FWHM of envelope^2) in fs");
    cmd->add_option("--cep", flags.cep, "Carrier-envelope phase in rad");
    cmd->add_option("--detuning-ev", flags.detuning_ev, "Laser detuning in eV");
    cmd->add_flag("--no-filter", flags.no_filter, "Disable the envelope filter");
    cmd->add_option("--set", flags.sets, "Extra override as section.key=value")->take_all();
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--format", flags.format, "Outputs to write: csv | json | svg | all");
    cmd->add_flag("--force", flags.force, "Overwrite existing output files");
}

void set_or_fail(rabsorb_config* cfg, const std::string& key, const std::string& value) {
    if (rabsorb_config_set(cfg, key.c_str(), value.c_str()) != RABSORB_OK)
        fail_api(RABSORB_ERR_CONFIG);
}

ConfigPtr build_config(const CommonFlags& flags) {
    ConfigPtr cfg(nullptr, &rabsorb_config_free);
    if (!flags.config_path.empty()) {
        cfg.reset(rabsorb_config_load(flags.config_path.c_str()));
        if (!cfg) fail(3, rabsorb_last_error());
    } else {
        cfg.reset(rabsorb_config_new());
    }
    if (!flags.preset.empty() &&
        rabsorb_config_apply_preset(cfg.get(), flags.preset.c_str()) != RABSORB_OK)
        fail_api(RABSORB_ERR_CONFIG);
    if (!flags.model.empty()) set_or_fail(cfg.get(), "model.model", flags.model);
    if (!flags.order.empty()) set_or_fail(cfg.get(), "pulse.order", flags.order);
    if (flags.area_cycles)
        set_or_fail(cfg.get(), "pulse.area_cycles", std::to_string(*flags.area_cycles));
    if (flags.intensity)
        set_or_fail(cfg.get(), "pulse.intensity_w_cm2", std::to_string(*flags.intensity));
    if (flags.tau_fs) set_or_fail(cfg.get(), "pulse.tau_fs", std::to_string(*flags.tau_fs));
    if (flags.cep) set_or_fail(cfg.get(), "pulse.cep_phi", std::to_string(*flags.cep));
    if (flags.detuning_ev)
        set_or_fail(cfg.get(), "pulse.detuning_ev", std::to_string(*flags.detuning_ev));
    if (flags.no_filter) set_or_fail(cfg.get(), "numerics.filter", "false");
    for (const std::string& kv : flags.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) fail(1, "--set expects section.key=value, got " + kv);
        set_or_fail(cfg.get(), kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (rabsorb_config_validate(cfg.get()) != RABSORB_OK) fail_api(RABSORB_ERR_CONFIG);
    return cfg;
}

bool wants(const std::string& format, const std::string& kind) {
    return format == "all" || format == kind;
}

std::string hash_from_metadata(const std::string& metadata) {
    try {
        return json::parse(metadata).at("config_hash").get<std::string>();
    } catch (const std::exception& e) {
        fail(4, std::string("metadata is not valid JSON: ") + e.what());
    }
}

std::ofstream open_output(const fs::path& path, bool force) {
    if (fs::exists(path) && !force)
        fail(3, "output file exists (use --force to overwrite): " + path.string());
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(3, "cannot write " + path.string());
    return out;
}

void write_text(const fs::path& path, const std::string& text, bool force) {
    auto out = open_output(path, force);
    out << text;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> fetch_time_column(const rabsorb_run* run, rabsorb_time_column col) {
    std::vector<double> out(rabsorb_run_time_count(run));
    if (rabsorb_run_time_column(run, col, out.data(), out.size()) != RABSORB_OK)
        fail_api(RABSORB_ERR_NUMERIC);
    return out;
}

std::vector<double> fetch_spectrum_column(const rabsorb_run* run, rabsorb_spectrum_column col) {
    std::vector<double> out(rabsorb_run_omega_count(run));
    if (rabsorb_run_spectrum_column(run, col, out.data(), out.size()) != RABSORB_OK)
        fail_api(RABSORB_ERR_NUMERIC);
    return out;
}

int cmd_simulate(const CommonFlags& flags) {
    ConfigPtr cfg = build_config(flags);
    std::unique_ptr<rabsorb_run, decltype(&rabsorb_run_free)> run(
        rabsorb_simulate(cfg.get()), &rabsorb_run_free);
    if (!run) fail_api(RABSORB_ERR_NUMERIC);

    const std::string metadata = rabsorb_run_metadata_json(run.get());
    const std::string hash = hash_from_metadata(metadata);
    fs::create_directories(flags.out_dir);
    const fs::path dir(flags.out_dir);

    if (wants(flags.format, "json"))
        write_text(dir / "metadata.json", metadata + "\n", flags.force);

    if (wants(flags.format, "csv")) {
        const auto t = fetch_time_column(run.get(), RABSORB_COL_TIME);
        const auto e = fetch_time_column(run.get(), RABSORB_COL_EFIELD);
        const auto a = fetch_time_column(run.get(), RABSORB_COL_APOT);
        const auto p = fetch_time_column(run.get(), RABSORB_COL_MOMENTUM);
        const auto pop_a = fetch_time_column(run.get(), RABSORB_COL_POP_A);
        const auto pop_b = fetch_time_column(run.get(), RABSORB_COL_POP_B);
        const auto energy = fetch_time_column(run.get(), RABSORB_COL_ENERGY);

        const json meta = json::parse(metadata);
        const std::size_t max_rows = 50000;
        const std::size_t stride = std::max<std::size_t>(1, t.size() / max_rows);
        auto out = open_output(dir / "timeseries.csv", flags.force);
        out << "# rabsorb time series (atomic units); stride " << stride << "\n";
        out << "# config_hash=" << hash << "\n";
        out << "t_au,efield_au,apot_au,momentum_au,pop_a,pop_b,denergy_au\n";
        for (std::size_t i = 0; i < t.size(); i += stride)
            out << num(t[i]) << ',' << num(e[i]) << ',' << num(a[i]) << ',' << num(p[i])
                << ',' << num(pop_a[i]) << ',' << num(pop_b[i]) << ',' << num(energy[i])
                << "\n";

        const auto omega = fetch_spectrum_column(run.get(), RABSORB_SPEC_OMEGA);
        const auto absorption = fetch_spectrum_column(run.get(), RABSORB_SPEC_ABSORPTION);
        const bool emission = rabsorb_run_has_emission(run.get()) != 0;
        std::vector<double> s_semi, s_quant, s_total, larmor_w;
        if (emission) {
            s_semi = fetch_spectrum_column(run.get(), RABSORB_SPEC_FLUOR_SEMI);
            s_quant = fetch_spectrum_column(run.get(), RABSORB_SPEC_FLUOR_QUANT);
            s_total = fetch_spectrum_column(run.get(), RABSORB_SPEC_FLUOR_TOTAL);
            larmor_w = fetch_spectrum_column(run.get(), RABSORB_SPEC_LARMOR);
        }
        auto spec_out = open_output(dir / "spectrum.csv", flags.force);
        spec_out << "# rabsorb spectra (atomic units); absorption positive = gain by atom\n";
        spec_out << "# config_hash=" << hash << "\n";
        spec_out << "omega_au,omega_ev,absorption_au"
                 << (emission ? ",s_semiclassical,s_quantum,fluor_total_scaled,larmor\n" : "\n");
        const double hartree_ev = 27.211386;
        for (std::size_t i = 0; i < omega.size(); ++i) {
            spec_out << num(omega[i]) << ',' << num(omega[i] * hartree_ev) << ','
                     << num(absorption[i]);
            if (emission)
                spec_out << ',' << num(s_semi[i]) << ',' << num(s_quant[i]) << ','
                         << num(s_total[i]) << ',' << num(larmor_w[i]);
            spec_out << "\n";
        }
    }

    std::cout << "simulate: wrote " << flags.out_dir << " (config " << hash << ")\n";
    const json meta = json::parse(metadata);
    std::cout << "  area cycles: " << meta["derived"]["area_cycles"]
              << "  photons: " << meta["derived"]["photons"]
              << "  triplet: " << (meta["triplet"]["is_triplet"].get<bool>() ? "yes" : "no")
              << "\n";
    for (const auto& w : meta["warnings"]) std::cout << "  warning: " << w.get<std::string>() << "\n";
    return 0;
}

int cmd_scan(const CommonFlags& flags) {
    ConfigPtr cfg = build_config(flags);
    std::unique_ptr<rabsorb_scan, decltype(&rabsorb_scan_free)> scan(
        rabsorb_scan_run(cfg.get()), &rabsorb_scan_free);
    if (!scan) fail_api(RABSORB_ERR_NUMERIC);

    const std::string metadata = rabsorb_scan_metadata_json(scan.get());
    const std::string hash = hash_from_metadata(metadata);
    const json meta = json::parse(metadata);
    fs::create_directories(flags.out_dir);
    const fs::path dir(flags.out_dir);

    const std::size_t n_axis = rabsorb_scan_axis_count(scan.get());
    const std::size_t n_omega = rabsorb_scan_omega_count(scan.get());
    std::vector<double> axis(n_axis), omegas(n_omega);
    if (rabsorb_scan_axis(scan.get(), axis.data(), axis.size()) != RABSORB_OK ||
        rabsorb_scan_omegas(scan.get(), omegas.data(), omegas.size()) != RABSORB_OK)
        fail_api(RABSORB_ERR_NUMERIC);
    std::vector<std::vector<double>> rows(n_axis, std::vector<double>(n_omega));
    for (std::size_t i = 0; i < n_axis; ++i)
        if (rabsorb_scan_row(scan.get(), i, rows[i].data(), n_omega) != RABSORB_OK)
            fail_api(RABSORB_ERR_NUMERIC);

    if (wants(flags.format, "json"))
        write_text(dir / "metadata.json", metadata + "\n", flags.force);

    const std::string axis_name = meta["axis"] == "area" ? "area_cycles" : "intensity_w_cm2";
    if (wants(flags.format, "csv")) {
        auto out = open_output(dir / "scan.csv", flags.force);
        out << "# rabsorb scan, long form; value = " << meta["observable"].get<std::string>()
            << " (atomic units)\n";
        out << "# config_hash=" << hash << "\n";
        out << axis_name << ",omega_au,value\n";
        for (std::size_t i = 0; i < n_axis; ++i)
            for (std::size_t j = 0; j < n_omega; ++j)
                out << num(axis[i]) << ',' << num(omegas[j]) << ',' << num(rows[i][j]) << "\n";

        std::vector<double> photons(n_axis), pops(2 * n_axis);
        std::vector<int> triplet(n_axis);
        if (rabsorb_scan_photons(scan.get(), photons.data(), n_axis) != RABSORB_OK ||
            rabsorb_scan_populations(scan.get(), pops.data(), pops.size()) != RABSORB_OK ||
            rabsorb_scan_triplet_flags(scan.get(), triplet.data(), n_axis) != RABSORB_OK)
            fail_api(RABSORB_ERR_NUMERIC);
        auto points = open_output(dir / "scan_points.csv", flags.force);
        points << "# per-point observables\n# config_hash=" << hash << "\n";
        points << axis_name << ",photons,final_pop_a,final_pop_b,is_triplet\n";
        for (std::size_t i = 0; i < n_axis; ++i)
            points << num(axis[i]) << ',' << num(photons[i]) << ',' << num(pops[2 * i]) << ','
                   << num(pops[2 * i + 1]) << ',' << triplet[i] << "\n";
    }

    if (wants(flags.format, "svg")) {
        svgheat::HeatmapOptions options;
        options.title = meta["observable"].get<std::string>() + " over " +
                        meta["axis"].get<std::string>();
        options.x_label = "omega (a.u.)";
        options.y_label = axis_name;
        options.log_y = meta["axis"] == "intensity";
        options.comment = "config_hash=" + hash;
        double lin = 1e-3;
        if (meta["config"].contains("output.linthresh_fraction"))
            lin = std::stod(meta["config"]["output.linthresh_fraction"].get<std::string>());
        options.linthresh_fraction = lin;
        write_text(dir / "heatmap.svg", svgheat::render(omegas, axis, rows, options),
                   flags.force);
    }

    std::cout << "scan: wrote " << flags.out_dir << " (" << n_axis << " x " << n_omega
              << ", config " << hash << ")\n";
    for (const auto& w : meta["warnings"]) std::cout << "  warning: " << w.get<std::string>() << "\n";
    return 0;
}

int cmd_condition(const CommonFlags& flags) {
    ConfigPtr cfg = build_config(flags);
    std::printf("%-6s %8s %8s %12s  %s\n", "order", "A_n", "B_n", "tau/T_Rabi", "verdict");
    const char* orders[] = {"1", "2", "3", "4", "5", "6", "flat"};
    for (const char* order : orders) {
        rabsorb_condition row{};
        if (rabsorb_condition_report(cfg.get(), order, &row) != RABSORB_OK)
            fail_api(RABSORB_ERR_CONFIG);
        if (std::isfinite(row.bandwidth_constant))
            std::printf("%-6s %8.4f %8.4f %12.4f  %s\n", order, row.area_constant,
                        row.bandwidth_constant, row.ratio, row.satisfied ? "pass" : "fail");
        else
            std::printf("%-6s %8.4f %8s %12.4f  %s\n", order, row.area_constant, "inf",
                        row.ratio, row.satisfied ? "pass" : "fail");
    }
    return 0;
}

int cmd_pulse_analyze(const CommonFlags& flags) {
    ConfigPtr cfg = build_config(flags);
    std::unique_ptr<rabsorb_pulse_report, decltype(&rabsorb_pulse_report_free)> report(
        rabsorb_pulse_analyze(cfg.get()), &rabsorb_pulse_report_free);
    if (!report) fail_api(RABSORB_ERR_NUMERIC);

    const std::string metadata = rabsorb_pulse_metadata_json(report.get());
    const std::string hash = hash_from_metadata(metadata);
    fs::create_directories(flags.out_dir);
    const fs::path dir(flags.out_dir);

    if (wants(flags.format, "json"))
        write_text(dir / "metadata.json", metadata + "\n", flags.force);

    if (wants(flags.format, "csv")) {
        const std::size_t nt = rabsorb_pulse_time_count(report.get());
        std::vector<double> t(nt), env(nt), deriv(nt);
        if (rabsorb_pulse_time_column(report.get(), 0, t.data(), nt) != RABSORB_OK ||
            rabsorb_pulse_time_column(report.get(), 1, env.data(), nt) != RABSORB_OK ||
            rabsorb_pulse_time_column(report.get(), 2, deriv.data(), nt) != RABSORB_OK)
            fail_api(RABSORB_ERR_NUMERIC);
        auto out = open_output(dir / "envelope.csv", flags.force);
        out << "# pulse envelope and d(envelope^2)/dt\n# config_hash=" << hash << "\n";
        out << "t_au,envelope,denvelope_sq_dt\n";
        for (std::size_t i = 0; i < nt; ++i)
            out << num(t[i]) << ',' << num(env[i]) << ',' << num(deriv[i]) << "\n";

        const std::size_t nw = rabsorb_pulse_omega_count(report.get());
        std::vector<double> w(nw), power(nw);
        if (rabsorb_pulse_spectrum_column(report.get(), 0, w.data(), nw) != RABSORB_OK ||
            rabsorb_pulse_spectrum_column(report.get(), 1, power.data(), nw) != RABSORB_OK)
            fail_api(RABSORB_ERR_NUMERIC);
        auto spec_out = open_output(dir / "envelope_spectrum.csv", flags.force);
        spec_out << "# squared envelope transform\n# config_hash=" << hash << "\n";
        spec_out << "omega_au,envelope_power\n";
        for (std::size_t i = 0; i < nw; ++i)
            spec_out << num(w[i]) << ',' << num(power[i]) << "\n";
    }

    const json meta = json::parse(metadata);
    std::cout << "pulse-analyze: tau' = " << meta["tau_prime_au"]
              << " a.u. (tau'/tau = " << meta["tau_prime_over_tau"]
              << "), A_n = " << meta["area_constant"] << ", B_n = " << meta["bandwidth_constant"]
              << "\n";
    return 0;
}

int cmd_verify(const std::string& out_dir) {
    const fs::path dir(out_dir);
    const fs::path meta_path = dir / "metadata.json";
    std::ifstream meta_in(meta_path);
    if (!meta_in) fail(3, "cannot open " + meta_path.string());
    json meta;
    try {
        meta_in >> meta;
    } catch (const std::exception& e) {
        fail(1, "metadata.json is not valid JSON: " + std::string(e.what()));
    }
    const std::string stored_hash = meta.at("config_hash").get<std::string>();
    const std::string canonical = meta.at("canonical").get<std::string>();

    // Recompute the hash of the canonical config text through the library.
    uint64_t recomputed = 1469598103934665603ull;
    for (unsigned char ch : canonical) {
        recomputed ^= ch;
        recomputed *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(recomputed));
    bool ok = stored_hash == buf;
    if (!ok) std::cout << "verify: metadata hash mismatch (" << stored_hash << " vs " << buf << ")\n";

    std::size_t checked = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string ext = entry.path().extension().string();
        if (ext != ".csv" && ext != ".svg") continue;
        std::ifstream in(entry.path());
        std::string contents((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
        const std::string token = "config_hash=" + stored_hash;
        if (contents.find(token) == std::string::npos) {
            std::cout << "verify: " << entry.path().filename().string()
                      << " does not carry config_hash " << stored_hash << "\n";
            ok = false;
        } else {
            ++checked;
        }
    }
    if (ok) {
        std::cout << "verify: OK (" << checked << " files match config " << stored_hash << ")\n";
        return 0;
    }
    fail(1, "verification failed for " + out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rabsorb: resonant absorption spectra of driven two-level atoms"};
    app.require_subcommand(1);

    CommonFlags simulate_flags, scan_flags, condition_flags, pulse_flags;
    std::string verify_dir = "out";

    CLI::App* simulate = app.add_subcommand("simulate", "Run one simulation and write results");
    add_common_flags(simulate, simulate_flags);
    CLI::App* scan = app.add_subcommand("scan", "Sweep pulse area or intensity");
    add_common_flags(scan, scan_flags);
    CLI::App* condition = app.add_subcommand("condition", "Print the triplet condition table");
    add_common_flags(condition, condition_flags);
    CLI::App* pulse = app.add_subcommand("pulse-analyze", "Envelope shape analysis");
    add_common_flags(pulse, pulse_flags);
    CLI::App* verify = app.add_subcommand("verify", "Check output files against their config hash");
    verify->add_option("--out", verify_dir, "Output directory to verify");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return cmd_simulate(simulate_flags);
        if (scan->parsed()) return cmd_scan(scan_flags);
        if (condition->parsed()) return cmd_condition(condition_flags);
        if (pulse->parsed()) return cmd_pulse_analyze(pulse_flags);
        if (verify->parsed()) return cmd_verify(verify_dir);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
