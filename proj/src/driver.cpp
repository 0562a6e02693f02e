#include "rabsorb/driver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rabsorb/errors.hpp"
#include "rabsorb/transform.hpp"

namespace rabsorb {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config: '" + key + "' expects a number, got '" + value + "'");
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0 || v != std::floor(v))
        throw config_error("config: '" + key + "' expects a non-negative integer");
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw config_error("config: '" + key + "' expects true/false");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

EnvelopeOrder parse_order(const std::string& text) {
    if (text == "flat" || text == "inf") return EnvelopeOrder::flat_top();
    try {
        std::size_t used = 0;
        const int n = std::stoi(text, &used);
        if (used == text.size() && n >= 1 && n <= 64) return EnvelopeOrder::finite(n);
    } catch (const std::exception&) {
    }
    throw config_error("config: pulse order must be 'flat' or an integer in [1, 64]");
}

}  // namespace

void set_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    auto opt = [&](std::optional<double>& field) { field = parse_double(key, value); };

    if (key == "system.epsilon_ba_ev") c.epsilon_ba_ev = parse_double(key, value);
    else if (key == "system.z_ba") c.z_ba = parse_double(key, value);
    else if (key == "pulse.intensity_w_cm2") opt(c.intensity_w_cm2);
    else if (key == "pulse.amplitude_a0") opt(c.amplitude_a0);
    else if (key == "pulse.omega0_ev") opt(c.omega0_ev);
    else if (key == "pulse.detuning_ev") opt(c.detuning_ev);
    else if (key == "pulse.tau_fs") opt(c.tau_fs);
    else if (key == "pulse.area_cycles") opt(c.area_cycles);
    else if (key == "pulse.order") { parse_order(value); c.order = value; }
    else if (key == "pulse.cep_phi") c.cep_phi = parse_double(key, value);
    else if (key == "numerics.dt_au") c.dt_au = parse_double(key, value);
    else if (key == "numerics.padding_au") c.padding_au = parse_double(key, value);
    else if (key == "numerics.omega_window_rabi") c.omega_window_rabi = parse_double(key, value);
    else if (key == "numerics.omega_points") c.omega_points = parse_size(key, value);
    else if (key == "numerics.filter") c.filter = parse_bool(key, value);
    else if (key == "model.model") c.model = value;
    else if (key == "model.gamma_a") c.gamma_a = parse_double(key, value);
    else if (key == "model.gamma_b") c.gamma_b = parse_double(key, value);
    else if (key == "model.delta_r_re") c.delta_r_re = parse_double(key, value);
    else if (key == "model.delta_r_im") c.delta_r_im = parse_double(key, value);
    else if (key == "emission.emission") c.emission = parse_bool(key, value);
    else if (key == "emission.gamma_filter_rabi") c.gamma_filter_rabi = parse_double(key, value);
    else if (key == "scan.scan_axis") c.scan_axis = value;
    else if (key == "scan.scan_observable") c.scan_observable = value;
    else if (key == "scan.scan_min") c.scan_min = parse_double(key, value);
    else if (key == "scan.scan_max") c.scan_max = parse_double(key, value);
    else if (key == "scan.scan_points") c.scan_points = parse_size(key, value);
    else if (key == "scan.scan_log_axis") c.scan_log_axis = parse_bool(key, value);
    else if (key == "output.linthresh_fraction") c.linthresh_fraction = parse_double(key, value);
    else if (key == "output.max_timeseries_rows") c.max_timeseries_rows = parse_size(key, value);
    else if (key == "output.threads") c.threads = static_cast<unsigned>(parse_size(key, value));
    else throw config_error("config: unknown key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config: malformed section at line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: expected key = value at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw config_error("config: key '" + key + "' outside any [section]");
        set_config_value(config, section + "." + key, value);
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

void apply_preset(RunConfig& c, const std::string& name) {
    c.intensity_w_cm2 = 1e12;
    c.amplitude_a0.reset();
    c.omega0_ev.reset();
    c.detuning_ev = 0.0;
    if (name == "fig1a") {
        c.order = "flat";
        c.area_cycles = 1.5;
        c.tau_fs.reset();
        c.emission = true;
        c.model = "numeric";
    } else if (name == "fig1e" || name == "fig1f" || name == "fig1g") {
        c.order = name == "fig1e" ? "flat" : (name == "fig1f" ? "2" : "1");
        c.scan_axis = "area";
        c.scan_observable = "absorption";
        c.scan_min = 0.1;
        c.scan_max = 4.0;
        c.scan_points = 81;
        c.scan_log_axis = false;
        c.emission = false;
    } else if (name == "fig3b" || name == "fig3c" || name == "fig3d") {
        c.order = name == "fig3b" ? "flat" : (name == "fig3c" ? "2" : "1");
        c.tau_fs = 97.0;
        c.area_cycles.reset();
        c.intensity_w_cm2.reset();  // swept
        c.amplitude_a0.reset();
        c.scan_axis = "intensity";
        c.scan_observable = "absorption";
        c.scan_min = 1e11;
        c.scan_max = 1e14;
        c.scan_points = 61;
        c.scan_log_axis = true;
        c.emission = false;
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
}

void validate(const RunConfig& c) {
    if (c.epsilon_ba_ev <= 0.0) throw config_error("system.epsilon_ba_ev must be positive");
    if (c.z_ba == 0.0) throw config_error("system.z_ba must be nonzero");
    const bool scanning_intensity = c.scan_axis == "intensity";
    if (c.intensity_w_cm2 && c.amplitude_a0)
        throw config_error("give exactly one of pulse.intensity_w_cm2 / pulse.amplitude_a0");
    if (c.intensity_w_cm2 && *c.intensity_w_cm2 < 0.0)
        throw config_error("pulse.intensity_w_cm2 must be non-negative");
    if (c.amplitude_a0 && *c.amplitude_a0 < 0.0)
        throw config_error("pulse.amplitude_a0 must be non-negative");
    if (c.omega0_ev && c.detuning_ev)
        throw config_error("give exactly one of pulse.omega0_ev / pulse.detuning_ev");
    if (c.omega0_ev && *c.omega0_ev <= 0.0)
        throw config_error("pulse.omega0_ev must be positive");
    if (c.tau_fs && c.area_cycles)
        throw config_error("give exactly one of pulse.tau_fs / pulse.area_cycles");
    if (c.tau_fs && *c.tau_fs <= 0.0) throw config_error("pulse.tau_fs must be positive");
    if (c.area_cycles && *c.area_cycles <= 0.0)
        throw config_error("pulse.area_cycles must be positive");
    parse_order(c.order);
    if (c.dt_au < 0.0) throw config_error("numerics.dt_au must be non-negative");
    if (c.omega_window_rabi <= 0.0)
        throw config_error("numerics.omega_window_rabi must be positive");
    if (c.omega_points < 16) throw config_error("numerics.omega_points must be at least 16");
    if (c.model != "numeric" && c.model != "analytic" && c.model != "heff")
        throw config_error("model.model must be numeric, analytic or heff");
    if (c.gamma_a < 0.0 || c.gamma_b < 0.0)
        throw config_error("model.gamma_a and model.gamma_b must be non-negative");
    if (c.gamma_filter_rabi <= 0.0)
        throw config_error("emission.gamma_filter_rabi must be positive");
    if (c.scan_axis != "area" && c.scan_axis != "intensity")
        throw config_error("scan.scan_axis must be area or intensity");
    if (c.scan_observable != "absorption" && c.scan_observable != "fluorescence" &&
        c.scan_observable != "larmor")
        throw config_error("scan.scan_observable must be absorption, fluorescence or larmor");
    if (c.scan_points < 2) throw config_error("scan.scan_points must be at least 2");
    if (c.scan_min >= c.scan_max) throw config_error("scan.scan_min must be below scan.scan_max");
    if (c.scan_log_axis && c.scan_min <= 0.0)
        throw config_error("scan.scan_min must be positive on a log axis");
    if (c.linthresh_fraction <= 0.0)
        throw config_error("output.linthresh_fraction must be positive");
    if (!scanning_intensity && !c.intensity_w_cm2 && !c.amplitude_a0)
        throw config_error("one of pulse.intensity_w_cm2 / pulse.amplitude_a0 is required");
}

std::string canonical_text(const RunConfig& c) {
    std::map<std::string, std::string> kv;
    kv["system.epsilon_ba_ev"] = format_number(c.epsilon_ba_ev);
    kv["system.z_ba"] = format_number(c.z_ba);
    if (c.intensity_w_cm2) kv["pulse.intensity_w_cm2"] = format_number(*c.intensity_w_cm2);
    if (c.amplitude_a0) kv["pulse.amplitude_a0"] = format_number(*c.amplitude_a0);
    if (c.omega0_ev) kv["pulse.omega0_ev"] = format_number(*c.omega0_ev);
    if (c.detuning_ev) kv["pulse.detuning_ev"] = format_number(*c.detuning_ev);
    if (c.tau_fs) kv["pulse.tau_fs"] = format_number(*c.tau_fs);
    if (c.area_cycles) kv["pulse.area_cycles"] = format_number(*c.area_cycles);
    kv["pulse.order"] = c.order;
    kv["pulse.cep_phi"] = format_number(c.cep_phi);
    kv["numerics.dt_au"] = format_number(c.dt_au);
    kv["numerics.padding_au"] = format_number(c.padding_au);
    kv["numerics.omega_window_rabi"] = format_number(c.omega_window_rabi);
    kv["numerics.omega_points"] = std::to_string(c.omega_points);
    kv["numerics.filter"] = c.filter ? "true" : "false";
    kv["model.model"] = c.model;
    kv["model.gamma_a"] = format_number(c.gamma_a);
    kv["model.gamma_b"] = format_number(c.gamma_b);
    kv["model.delta_r_re"] = format_number(c.delta_r_re);
    kv["model.delta_r_im"] = format_number(c.delta_r_im);
    kv["emission.emission"] = c.emission ? "true" : "false";
    kv["emission.gamma_filter_rabi"] = format_number(c.gamma_filter_rabi);
    kv["scan.scan_axis"] = c.scan_axis;
    kv["scan.scan_observable"] = c.scan_observable;
    kv["scan.scan_min"] = format_number(c.scan_min);
    kv["scan.scan_max"] = format_number(c.scan_max);
    kv["scan.scan_points"] = std::to_string(c.scan_points);
    kv["scan.scan_log_axis"] = c.scan_log_axis ? "true" : "false";
    kv["output.linthresh_fraction"] = format_number(c.linthresh_fraction);
    std::string out;
    for (const auto& [key, value] : kv) out += key + "=" + value + "\n";
    return out;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t config_hash(const RunConfig& c) { return fnv1a64(canonical_text(c)); }

TwoLevelSystem make_system(const RunConfig& c) {
    return TwoLevelSystem::from_gap(convert(c.epsilon_ba_ev, Quantity::Energy, Direction::ToAu),
                                    c.z_ba);
}

double resolved_detuning(const RunConfig& c) {
    if (c.detuning_ev) return convert(*c.detuning_ev, Quantity::Energy, Direction::ToAu);
    if (c.omega0_ev) {
        const double omega0 = convert(*c.omega0_ev, Quantity::Energy, Direction::ToAu);
        return omega0 - convert(c.epsilon_ba_ev, Quantity::Energy, Direction::ToAu);
    }
    return 0.0;
}

PulseSpec make_pulse(const RunConfig& c) {
    const TwoLevelSystem sys = make_system(c);
    const double omega0 = sys.epsilon_ba() + resolved_detuning(c);
    const EnvelopeOrder order = parse_order(c.order);

    double a0 = 0.0;
    if (c.amplitude_a0) a0 = *c.amplitude_a0;
    else if (c.intensity_w_cm2)
        a0 = convert(*c.intensity_w_cm2, Quantity::FieldAmplitude, Direction::ToAu) / omega0;
    else
        throw config_error("pulse amplitude unresolved (intensity or amplitude required)");

    double tau;
    if (c.tau_fs) {
        tau = convert(*c.tau_fs, Quantity::Time, Direction::ToAu);
    } else if (c.area_cycles) {
        const double omega_r = a0 * omega0 * c.z_ba;
        if (omega_r == 0.0)
            throw config_error("pulse.area_cycles needs a nonzero amplitude");
        const double t_rabi = 2.0 * std::numbers::pi / std::abs(omega_r);
        tau = *c.area_cycles * t_rabi / area_constant(order);
    } else {
        throw config_error("one of pulse.tau_fs / pulse.area_cycles is required");
    }
    return {a0, omega0, tau, order, c.cep_phi};
}

namespace {

// Two nested uniform grids sharing the pulse edges: a coarse one that still
// resolves every frequency of interest (used for sampling, transforms and
// output) and a refinement of it for the propagator.
struct GridPair {
    TimeGrid coarse;
    TimeGrid fine;
    std::size_t stride = 1;
};

GridPair build_grids(const RunConfig& c, const TwoLevelSystem& sys, const PulseSpec& spec) {
    const double fastest =
        std::max({std::abs(sys.epsilon_a), std::abs(sys.epsilon_b), spec.carrier_omega0});
    const double bound = 0.05 / fastest;
    const double half = 0.5 * spec.duration_tau;

    const double coarse_target = 0.75 * bound;
    const std::size_t half_steps =
        static_cast<std::size_t>(std::ceil(half / coarse_target));
    const double dt_coarse = half / static_cast<double>(half_steps);

    const double fine_target = c.dt_au > 0.0 ? c.dt_au : bound / 16.0;
    const std::size_t stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(dt_coarse / fine_target - 1e-9)));
    const double dt_fine = dt_coarse / static_cast<double>(stride);

    double padding = c.padding_au;
    if (padding < 0.0) {
        if (spec.order.is_flat_top()) {
            padding = 0.1 * spec.duration_tau;
        } else {
            const double u = std::pow(2.0 * std::log(1e8) / std::numbers::ln2,
                                      1.0 / (2.0 * spec.order.n()));
            padding = 0.5 * (u - 1.0) * spec.duration_tau;
        }
    }
    // Pad by whole coarse steps so the grids stay nested.
    padding = dt_coarse * std::ceil(padding / dt_coarse);

    GridPair grids;
    grids.coarse = make_grid(spec.duration_tau, dt_coarse, padding, fastest);
    grids.fine = make_grid(spec.duration_tau, dt_fine, padding, fastest);
    grids.stride = stride;
    return grids;
}

AmplitudeTrajectory downsample(const AmplitudeTrajectory& traj, const TimeGrid& coarse,
                               std::size_t stride) {
    AmplitudeTrajectory out;
    out.grid = coarse;
    out.model = traj.model;
    out.a.resize(coarse.n_points);
    out.b.resize(coarse.n_points);
    for (std::size_t i = 0; i < coarse.n_points; ++i) {
        out.a[i] = traj.a[i * stride];
        out.b[i] = traj.b[i * stride];
    }
    return out;
}

json triplet_json(const TripletReport& report) {
    json j;
    j["is_triplet"] = report.is_triplet;
    j["peak_positions_au"] = report.peak_positions;
    j["peak_heights"] = report.peak_heights;
    j["central_to_side_ratio"] = report.central_to_side_ratio;
    return j;
}

json config_json(const RunConfig& c) {
    json j;
    std::istringstream lines(canonical_text(c));
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        j[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return j;
}

std::string hash_hex(std::uint64_t hash) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace

SimulationOutput run_simulation(const RunConfig& c) {
    validate(c);
    if (c.scan_axis == "intensity" && !c.intensity_w_cm2 && !c.amplitude_a0)
        throw config_error("simulate needs a pulse amplitude even when scan.* is configured");
    const TwoLevelSystem sys = make_system(c);
    const PulseSpec spec = make_pulse(c);
    const double detuning = resolved_detuning(c);
    if (spec.amplitude_a0 <= 0.0)
        throw config_error("simulate: zero-amplitude pulse has no dynamics to compute");

    SimulationOutput out;
    out.condition = mollow_condition(spec, sys);
    out.theta = pulse_area(spec, sys);
    out.cycles = out.theta / (2.0 * std::numbers::pi);
    out.t_rabi_fs = convert(spec.rabi_period(sys), Quantity::Time, Direction::FromAu);

    const GridPair grids = build_grids(c, sys, spec);

    AmplitudeTrajectory traj;
    if (c.model == "numeric") {
        traj = downsample(propagate_numeric(sys, spec, grids.fine), grids.coarse, grids.stride);
    } else if (c.model == "analytic") {
        if (!spec.order.is_flat_top())
            throw config_error("model 'analytic' needs a flat-top pulse");
        traj = analytic_flat_top_trajectory(sys, spec, detuning, {}, grids.coarse);
    } else {
        if (!spec.order.is_flat_top())
            throw config_error("model 'heff' needs a flat-top pulse");
        const EffectiveShifts shifts{c.gamma_a, c.gamma_b, {c.delta_r_re, c.delta_r_im}};
        const EffectiveHamiltonian h = build_effective_hamiltonian(sys, spec, detuning, shifts);
        traj = heff_trajectory(sys, spec, detuning, h, {}, grids.coarse);
    }

    const TimeGrid& grid = grids.coarse;
    out.efield = Signal{grid, std::vector<double>(grid.n_points)};
    out.apot = Signal{grid, std::vector<double>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double t = grid.time_at(i);
        out.efield.values[i] = electric_field(spec, t);
        out.apot.values[i] = vector_potential(spec, t);
    }
    out.momentum = momentum_expectation(traj, sys);
    auto pops = populations(traj);
    out.pop_a = std::move(pops.first);
    out.pop_b = std::move(pops.second);
    out.denergy = absorption_time(out.efield, out.momentum);
    out.photons = photon_count(out.denergy, spec.carrier_omega0);

    const double omega_r = spec.peak_rabi(sys);
    out.omegas = uniform_omega_grid(spec.carrier_omega0 - c.omega_window_rabi * omega_r,
                                    spec.carrier_omega0 + c.omega_window_rabi * omega_r,
                                    c.omega_points);

    if (c.model == "numeric") {
        const Signal atom_signal =
            c.filter ? apply_filter(out.momentum, spec) : out.momentum;
        const Spectrum p_ft = fourier(atom_signal, out.omegas);
        const Spectrum a_ft = fourier(out.apot, out.omegas);
        if (p_ft.boundary_warning)
            out.warnings.push_back(
                "momentum signal not decayed at the grid boundary; spectrum may leak");
        out.absorption = absorption_spectrum(AbsorptionForm::Momentum, p_ft, a_ft);
    } else if (c.model == "analytic") {
        out.absorption = analytic_absorption_flat_top(sys, spec, detuning, {}, out.omegas);
    } else {
        const EffectiveShifts shifts{c.gamma_a, c.gamma_b, {c.delta_r_re, c.delta_r_im}};
        const EffectiveHamiltonian h = build_effective_hamiltonian(sys, spec, detuning, shifts);
        const Spectrum p_ft = heff_momentum_spectrum(sys, spec, detuning, h, {}, out.omegas);
        const Spectrum a_ft = flat_top_potential_ft(spec, out.omegas);
        out.absorption = absorption_spectrum(AbsorptionForm::Momentum, p_ft, a_ft);
    }

    if (c.emission) {
        const double gamma = c.gamma_filter_rabi * omega_r;
        FluorescenceSpectrum fluor = fluorescence(traj, gamma, spec.carrier_omega0, out.omegas);
        const LarmorSpectrum larm = larmor(acceleration(traj, sys), out.omegas);
        try {
            fluor = scale_fluorescence_to_larmor(std::move(fluor), larm);
        } catch (const config_error&) {
            out.warnings.push_back("fluorescence left unscaled (semiclassical part vanishes)");
        }
        out.fluor = std::move(fluor);
        out.larmor_spectrum = larm;
    }

    try {
        out.triplet = find_triplet(out.omegas, out.absorption, spec.carrier_omega0, omega_r);
    } catch (const numeric_error& e) {
        out.warnings.push_back(std::string("triplet detection skipped: ") + e.what());
    }

    if (c.intensity_w_cm2 && *c.intensity_w_cm2 > 1e13)
        out.warnings.push_back(
            "intensity above 1e13 W/cm^2 exceeds the validated two-level range");

    json meta;
    meta["tool"] = "rabsorb";
    meta["version"] = kVersion;
    meta["config"] = config_json(c);
    meta["canonical"] = canonical_text(c);
    meta["config_hash"] = hash_hex(config_hash(c));
    json derived;
    derived["model"] = c.model;
    derived["theta_rad"] = out.theta;
    derived["area_cycles"] = out.cycles;
    derived["t_rabi_fs"] = out.t_rabi_fs;
    derived["omega0_au"] = spec.carrier_omega0;
    derived["detuning_au"] = detuning;
    derived["amplitude_a0_au"] = spec.amplitude_a0;
    derived["tau_au"] = spec.duration_tau;
    derived["rabi_omega0_au"] = omega_r;
    derived["area_constant"] = out.condition.area_constant;
    derived["bandwidth_constant"] = std::isfinite(out.condition.bandwidth_constant)
                                        ? json(out.condition.bandwidth_constant)
                                        : json("inf");
    derived["tau_over_t_rabi"] = out.condition.ratio;
    derived["condition_satisfied"] = out.condition.satisfied;
    derived["photons"] = out.photons;
    derived["final_pop_a"] = out.pop_a.values.back();
    derived["final_pop_b"] = out.pop_b.values.back();
    derived["fluorescence_scale"] = out.fluor ? json(out.fluor->scale_factor) : json();
    meta["derived"] = derived;
    meta["triplet"] = triplet_json(out.triplet);
    meta["warnings"] = out.warnings;
    out.metadata_json = meta.dump(2);
    return out;
}

ScanOutput run_scan(const RunConfig& c) {
    validate(c);
    const TwoLevelSystem sys = make_system(c);

    ScanOptions opts;
    opts.dt = c.dt_au;
    opts.filter = c.filter;
    opts.threads = c.threads;

    ScanObservable observable = ScanObservable::Absorption;
    if (c.scan_observable == "fluorescence") observable = ScanObservable::Fluorescence;
    if (c.scan_observable == "larmor") observable = ScanObservable::Larmor;

    std::vector<double> axis(c.scan_points);
    for (std::size_t i = 0; i < c.scan_points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(c.scan_points - 1);
        axis[i] = c.scan_log_axis
                      ? c.scan_min * std::pow(c.scan_max / c.scan_min, f)
                      : c.scan_min + f * (c.scan_max - c.scan_min);
    }

    ScanOutput out;
    if (c.scan_axis == "area") {
        RunConfig base_cfg = c;
        if (!base_cfg.tau_fs && !base_cfg.area_cycles) base_cfg.area_cycles = 1.0;
        const PulseSpec base = make_pulse(base_cfg);
        const double omega_r = base.peak_rabi(sys);
        const auto omegas =
            uniform_omega_grid(base.carrier_omega0 - c.omega_window_rabi * omega_r,
                               base.carrier_omega0 + c.omega_window_rabi * omega_r,
                               c.omega_points);
        out.result = scan_area(sys, base, observable, axis, omegas, opts);
    } else {
        if (!c.tau_fs)
            throw config_error("intensity scans need pulse.tau_fs (fixed duration)");
        RunConfig base_cfg = c;
        base_cfg.intensity_w_cm2 = axis.back();
        const PulseSpec base = make_pulse(base_cfg);
        const double omega_r_max = base.peak_rabi(sys);
        const auto omegas =
            uniform_omega_grid(base.carrier_omega0 - c.omega_window_rabi * omega_r_max,
                               base.carrier_omega0 + c.omega_window_rabi * omega_r_max,
                               c.omega_points);
        out.result = scan_intensity(sys, base, axis, omegas, opts);
    }

    json meta;
    meta["tool"] = "rabsorb";
    meta["version"] = kVersion;
    meta["config"] = config_json(c);
    meta["canonical"] = canonical_text(c);
    meta["config_hash"] = hash_hex(config_hash(c));
    meta["axis"] = c.scan_axis;
    meta["observable"] = c.scan_observable;
    meta["axis_points"] = out.result.axis_values.size();
    meta["omega_points"] = out.result.omegas.size();
    meta["photons"] = out.result.photons;
    json flags = json::array();
    for (bool f : out.result.triplet_flags) flags.push_back(f);
    meta["triplet_flags"] = flags;
    meta["warnings"] = out.result.warnings;
    out.metadata_json = meta.dump(2);
    return out;
}

std::vector<ConditionRow> condition_table(const RunConfig& c, int max_order) {
    validate(c);
    const TwoLevelSystem sys = make_system(c);
    RunConfig base_cfg = c;
    if (!base_cfg.tau_fs && !base_cfg.area_cycles)
        throw config_error("condition table needs pulse.tau_fs or pulse.area_cycles");
    std::vector<ConditionRow> rows;
    for (int n = 1; n <= max_order + 1; ++n) {
        const bool flat = n == max_order + 1;
        RunConfig point = base_cfg;
        point.order = flat ? "flat" : std::to_string(n);
        const PulseSpec spec = make_pulse(point);
        const MollowConditionReport report = mollow_condition(spec, sys);
        rows.push_back({flat ? "flat" : std::to_string(n), report.area_constant,
                        report.bandwidth_constant, report.ratio, report.satisfied});
    }
    return rows;
}

PulseAnalysis pulse_analysis(const RunConfig& c) {
    validate(c);
    const TwoLevelSystem sys = make_system(c);
    const PulseSpec spec = make_pulse(c);
    (void)sys;

    PulseAnalysis out;
    const double tau = spec.duration_tau;
    const double t_max = spec.order.is_flat_top() ? 0.75 * tau : 1.75 * tau;
    const double dt = t_max / 2000.0;
    const TimeGrid grid = make_grid(2.0 * t_max, dt, 0.0, 0.0);
    out.envelope = Signal{grid, std::vector<double>(grid.n_points)};
    out.envelope_sq_deriv = Signal{grid, std::vector<double>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double t = grid.time_at(i);
        const double env = envelope(spec, t);
        out.envelope.values[i] = env;
        out.envelope_sq_deriv.values[i] = 2.0 * env * envelope_derivative(spec, t);
    }

    out.omegas = uniform_omega_grid(-40.0 / tau, 40.0 / tau, 2001);
    const Spectrum env_ft = envelope_spectrum(spec, out.omegas);
    out.envelope_power.resize(out.omegas.size());
    for (std::size_t i = 0; i < out.omegas.size(); ++i)
        out.envelope_power[i] = std::norm(env_ft.values[i]);

    out.tau_prime = turn_on_duration(spec.order, tau);
    out.area_const = area_constant(spec.order);
    out.bandwidth_const = bandwidth_constant(spec.order);

    json meta;
    meta["tool"] = "rabsorb";
    meta["version"] = kVersion;
    meta["config"] = config_json(c);
    meta["canonical"] = canonical_text(c);
    meta["config_hash"] = hash_hex(config_hash(c));
    meta["tau_au"] = tau;
    meta["tau_prime_au"] = out.tau_prime;
    meta["tau_prime_over_tau"] = out.tau_prime / tau;
    meta["area_constant"] = out.area_const;
    meta["bandwidth_constant"] =
        std::isfinite(out.bandwidth_const) ? json(out.bandwidth_const) : json("inf");
    out.metadata_json = meta.dump(2);
    return out;
}

}  // namespace rabsorb
