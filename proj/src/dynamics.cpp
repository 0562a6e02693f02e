#include "rabsorb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rabsorb/errors.hpp"

namespace rabsorb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

// Interaction-picture right-hand side:
//   da/dt = -i V(t) exp(-i eps_ba t) b,  db/dt = -i V(t) exp(+i eps_ba t) a
// with V(t) = E(t) z_ba.
struct Deriv {
    const TwoLevelSystem& sys;
    const PulseSpec& spec;
    void operator()(double t, const cplx& a, const cplx& b, cplx& da, cplx& db) const {
        const double v = electric_field(spec, t) * sys.z_ba;
        const cplx phase = expi(-sys.epsilon_ba() * t);
        da = -kI * v * phase * b;
        db = -kI * v * std::conj(phase) * a;
    }
};

void rk4_step(const Deriv& deriv, double t, double dt, cplx& a, cplx& b) {
    cplx k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    deriv(t, a, b, k1a, k1b);
    deriv(t + 0.5 * dt, a + 0.5 * dt * k1a, b + 0.5 * dt * k1b, k2a, k2b);
    deriv(t + 0.5 * dt, a + 0.5 * dt * k2a, b + 0.5 * dt * k2b, k3a, k3b);
    deriv(t + dt, a + dt * k3a, b + dt * k3b, k4a, k4b);
    a += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    b += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
}

// Rotating-frame mapping used by the analytic and effective-Hamiltonian
// models. For the field A(t) = A0 L sin(w0 t + phi) the textbook Rabi form
// matches the true RWA limit when its phase argument is taken as
// phi + dw * t_i + pi/2 (carrier phase accumulated to the pulse start plus
// the sin-versus-cos quarter period).
double formula_phase(const PulseSpec& spec, double detuning) {
    return spec.cep_phi + detuning * spec.start_time() + 0.5 * kPi;
}

struct Expansion {
    cplx k_minus, k_plus, k_b;  // coherence a* b = e^{-i dw s} [K- + K+ cos(Ws) + i K_B sin(Ws)]
    double w;                   // generalised Rabi frequency
};

// Coefficients of the coherence expansion consistent with the propagator's
// field convention (laser phase Phi = dw t_i + phi enters explicitly).
Expansion coherence_expansion(const TwoLevelSystem& sys, const PulseSpec& spec,
                              double detuning, InitialState init) {
    const double omega_r = spec.peak_rabi(sys);
    const double w = std::hypot(omega_r, detuning);
    if (w == 0.0) return {init.a0 * 0.0, init.a0 * 0.0, init.a0 * 0.0, 0.0};
    const double d = detuning / w;
    const double o = omega_r / w;
    const cplx e_phi = expi(-(detuning * spec.start_time() + spec.cep_phi));
    const cplx coh = std::conj(init.a0) * init.b0;
    const cplx coh_c = init.a0 * std::conj(init.b0);
    const double pop = std::norm(init.a0) - std::norm(init.b0);
    Expansion out;
    out.k_minus = -0.5 * o * d * e_phi * pop + 0.5 * (1.0 - d * d) * coh +
                  0.5 * o * o * e_phi * e_phi * coh_c;
    out.k_plus = 0.5 * o * d * e_phi * pop + 0.5 * (1.0 + d * d) * coh -
                 0.5 * o * o * e_phi * e_phi * coh_c;
    out.k_b = 0.5 * o * e_phi * pop + d * coh;
    out.w = w;
    return out;
}

}  // namespace

AmplitudeTrajectory propagate_numeric(const TwoLevelSystem& sys, const PulseSpec& spec,
                                      const TimeGrid& grid, InitialState init) {
    const double norm0 = std::norm(init.a0) + std::norm(init.b0);
    if (std::abs(norm0 - 1.0) > 1e-9)
        throw config_error("propagate_numeric: initial state must be normalised");

    AmplitudeTrajectory traj;
    traj.grid = grid;
    traj.model = ModelTag::Numeric;
    traj.a.assign(grid.n_points, init.a0);
    traj.b.assign(grid.n_points, init.b0);
    if (spec.amplitude_a0 == 0.0 || grid.n_points < 3) return traj;

    // The interaction-picture amplitudes are exactly constant while the
    // envelope vanishes, so propagation starts at the pulse support.
    std::size_t first = 0, last = grid.n_points - 1;
    while (first < last && envelope(spec, grid.time_at(first)) < 1e-12) ++first;
    while (last > first && envelope(spec, grid.time_at(last)) < 1e-12) --last;
    if (first > 0) --first;
    if (last + 1 < grid.n_points) ++last;
    if (last - first < 2) return traj;

    const Deriv deriv{sys, spec};
    const double dt = grid.dt;

    // One classical 4th-order step seeds the two-step recursion.
    {
        cplx a = traj.a[first], b = traj.b[first];
        rk4_step(deriv, grid.time_at(first), dt, a, b);
        traj.a[first + 1] = a;
        traj.b[first + 1] = b;
    }

    const cplx step_a = expi(sys.epsilon_a * dt), step_a2 = step_a * step_a;
    const cplx step_b = expi(sys.epsilon_b * dt), step_b2 = step_b * step_b;
    const cplx rot = expi(-sys.epsilon_ba() * dt);
    const cplx minus_2idt{0.0, -2.0 * dt};

    double worst_drift = 0.0;
    cplx phase = expi(-sys.epsilon_ba() * grid.time_at(first + 1));
    for (std::size_t j = first + 1; j < last; ++j) {
        if ((j - first) % 512 == 0) phase = expi(-sys.epsilon_ba() * grid.time_at(j));
        const double v = electric_field(spec, grid.time_at(j)) * sys.z_ba;
        traj.a[j + 1] = minus_2idt * (sys.epsilon_a * traj.a[j] + v * phase * traj.b[j]) *
                            step_a +
                        traj.a[j - 1] * step_a2;
        traj.b[j + 1] = minus_2idt *
                            (sys.epsilon_b * traj.b[j] + v * std::conj(phase) * traj.a[j]) *
                            step_b +
                        traj.b[j - 1] * step_b2;
        phase *= rot;
        if ((j - first) % 1024 == 0) {
            const double norm = std::norm(traj.a[j + 1]) + std::norm(traj.b[j + 1]);
            worst_drift = std::max(worst_drift, std::abs(norm - 1.0));
        }
    }
    for (std::size_t j = last + 1; j < grid.n_points; ++j) {
        traj.a[j] = traj.a[last];
        traj.b[j] = traj.b[last];
    }
    const double norm_end = std::norm(traj.a[last]) + std::norm(traj.b[last]);
    worst_drift = std::max(worst_drift, std::abs(norm_end - 1.0));
    if (worst_drift > 1e-4)
        throw numeric_error("propagate_numeric: norm drift " + std::to_string(worst_drift) +
                            " exceeds 1e-4; reduce dt");
    return traj;
}

std::pair<cplx, cplx> rabi_amplitudes(double rabi_omega, double detuning, double phi,
                                      InitialState init, double elapsed) {
    const double w = std::hypot(rabi_omega, detuning);
    if (w == 0.0) return {init.a0, init.b0};
    const double half = 0.5 * w * elapsed;
    const double c = std::cos(half), s = std::sin(half);
    const cplx eip = expi(phi);
    const cplx a = expi(0.5 * detuning * elapsed) *
                   (init.a0 * c -
                    kI * ((detuning * init.a0 + kI * rabi_omega * init.b0 * eip) / w) * s);
    const cplx b = expi(-0.5 * detuning * elapsed) *
                   (init.b0 * c +
                    kI * ((detuning * init.b0 + kI * rabi_omega * init.a0 / eip) / w) * s);
    return {a, b};
}

std::pair<cplx, cplx> analytic_flat_top_amplitudes(const TwoLevelSystem& sys,
                                                   const PulseSpec& spec, double detuning,
                                                   InitialState init, double t) {
    if (!spec.order.is_flat_top())
        throw config_error("analytic_flat_top_amplitudes: flat-top pulses only");
    const double elapsed =
        std::clamp(t, spec.start_time(), spec.end_time()) - spec.start_time();
    return rabi_amplitudes(spec.peak_rabi(sys), detuning, formula_phase(spec, detuning),
                           init, elapsed);
}

AmplitudeTrajectory analytic_flat_top_trajectory(const TwoLevelSystem& sys,
                                                 const PulseSpec& spec, double detuning,
                                                 InitialState init, const TimeGrid& grid) {
    AmplitudeTrajectory traj;
    traj.grid = grid;
    traj.model = ModelTag::AnalyticFlatTop;
    traj.a.resize(grid.n_points);
    traj.b.resize(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        auto [a, b] = analytic_flat_top_amplitudes(sys, spec, detuning, init, grid.time_at(i));
        traj.a[i] = a;
        traj.b[i] = b;
    }
    return traj;
}

MomentumCoefficients momentum_coefficients(double rabi_omega, double detuning, double phi,
                                           InitialState init) {
    const double w = std::hypot(rabi_omega, detuning);
    if (w == 0.0) throw config_error("momentum_coefficients: W must be nonzero");
    const cplx coh = std::conj(init.a0) * init.b0;
    const cplx e_miphi = expi(-phi);
    const double na = std::norm(init.a0), nb = std::norm(init.b0);
    const cplx bracket = detuning * detuning * coh -
                         detuning * rabi_omega * na * e_miphi +
                         detuning * rabi_omega * nb * e_miphi -
                         rabi_omega * rabi_omega * coh * e_miphi * e_miphi;
    MomentumCoefficients out;
    out.a_plus = 0.5 * (coh + bracket / (w * w));
    out.a_minus = 0.5 * (coh - bracket / (w * w));
    out.b = (2.0 * detuning * coh - rabi_omega * na * e_miphi + rabi_omega * nb * e_miphi) /
            (2.0 * w);
    return out;
}

Signal momentum_expectation(const AmplitudeTrajectory& traj, const TwoLevelSystem& sys) {
    Signal out;
    out.grid = traj.grid;
    out.values.resize(traj.grid.n_points);
    const cplx p_ba_conj = std::conj(sys.p_ba());
    const double eps = sys.epsilon_ba();
    for (std::size_t i = 0; i < traj.grid.n_points; ++i) {
        const cplx coh = std::conj(traj.a[i]) * traj.b[i];
        out.values[i] = 2.0 * std::real(coh * p_ba_conj * expi(-eps * traj.grid.time_at(i)));
    }
    return out;
}

double analytic_momentum_time(const TwoLevelSystem& sys, const PulseSpec& spec,
                              double detuning, InitialState init, double t) {
    if (!spec.order.is_flat_top())
        throw config_error("analytic_momentum_time: flat-top pulses only");
    const Expansion ex = coherence_expansion(sys, spec, detuning, init);
    if (ex.w == 0.0) {
        const cplx coh = std::conj(init.a0) * init.b0;
        return 2.0 * std::real(coh * std::conj(sys.p_ba()) * expi(-sys.epsilon_ba() * t));
    }
    const double s = std::clamp(t, spec.start_time(), spec.end_time()) - spec.start_time();
    const cplx coh = expi(-detuning * s) *
                     (ex.k_minus + ex.k_plus * std::cos(ex.w * s) +
                      kI * ex.k_b * std::sin(ex.w * s));
    return 2.0 * std::real(coh * std::conj(sys.p_ba()) * expi(-sys.epsilon_ba() * t));
}

Spectrum analytic_momentum_spectrum(const TwoLevelSystem& sys, const PulseSpec& spec,
                                    double detuning, InitialState init,
                                    std::span<const double> omegas) {
    if (!spec.order.is_flat_top())
        throw config_error("analytic_momentum_spectrum: flat-top pulses only");
    const Expansion ex = coherence_expansion(sys, spec, detuning, init);
    const double tau = spec.duration_tau;
    const double t_i = spec.start_time();
    const double omega_line = sys.epsilon_ba() + detuning;  // carrier
    Spectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.resize(omegas.size());
    const cplx prefactor = std::conj(sys.p_ba()) * expi(detuning * t_i) * tau /
                           std::sqrt(2.0 * kPi);
    const cplx up = 0.5 * (ex.k_plus + ex.k_b) * expi(-ex.w * t_i);
    const cplx down = 0.5 * (ex.k_plus - ex.k_b) * expi(ex.w * t_i);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double delta = omegas[i] - omega_line;
        out.values[i] = prefactor * (ex.k_minus * sinc(0.5 * delta * tau) +
                                     up * sinc(0.5 * (delta + ex.w) * tau) +
                                     down * sinc(0.5 * (delta - ex.w) * tau));
    }
    return out;
}

EffectiveHamiltonian build_effective_hamiltonian(const TwoLevelSystem& sys,
                                                 const PulseSpec& spec, double detuning,
                                                 const EffectiveShifts& shifts) {
    EffectiveHamiltonian h;
    h.h_aa = shifts.shift_a - kI * 0.5 * shifts.gamma_a;
    h.h_bb = -detuning + shifts.shift_b - kI * 0.5 * shifts.gamma_b;
    h.h_ab = 0.5 * spec.peak_rabi(sys) + shifts.delta_r;
    if (h.h_aa.imag() > 0.0 || h.h_bb.imag() > 0.0)
        throw config_error(
            "build_effective_hamiltonian: diagonal imaginary parts must be <= 0 (decay)");
    return h;
}

EffectiveEigensystem heff_eigensystem(const EffectiveHamiltonian& h) {
    const cplx diff = h.h_aa - h.h_bb;
    const cplx w = std::sqrt(diff * diff + 4.0 * h.h_ab * h.h_ab);
    const double scale = std::abs(h.h_aa) + std::abs(h.h_bb) + std::abs(h.h_ab) + 1e-300;
    if (std::abs(w) < 1e-12 * scale)
        throw numeric_error("heff_eigensystem: degenerate eigensystem (W = 0)");
    EffectiveEigensystem out;
    const cplx mean = 0.5 * (h.h_aa + h.h_bb);
    out.w = w;
    out.lambda_plus = mean + 0.5 * w;
    out.lambda_minus = mean - 0.5 * w;
    out.state_plus = {h.h_ab, 0.5 * (h.h_bb - h.h_aa) + 0.5 * w};
    out.state_minus = {h.h_ab, 0.5 * (h.h_bb - h.h_aa) - 0.5 * w};
    return out;
}

namespace {

struct HeffSolution {
    EffectiveEigensystem eig;
    cplx c_plus, c_minus;
};

// Rotating-frame initial state (alpha, beta) = (a0, -b0 exp(i Phi)) with the
// laser phase Phi accumulated to the pulse start; the sign pairs the
// symmetric h_ab = +Omega/2 convention with the A ~ sin field.
HeffSolution solve_heff(const PulseSpec& spec, double detuning,
                        const EffectiveHamiltonian& h, InitialState init) {
    HeffSolution sol{heff_eigensystem(h), {}, {}};
    const double phi_i = detuning * spec.start_time() + spec.cep_phi;
    const cplx alpha0 = init.a0;
    const cplx beta0 = -init.b0 * expi(phi_i);
    const auto& vp = sol.eig.state_plus;
    const auto& vm = sol.eig.state_minus;
    const cplx det = vp[0] * vm[1] - vm[0] * vp[1];
    const double scale = std::abs(vp[0]) + std::abs(vp[1]) + std::abs(vm[0]) + std::abs(vm[1]);
    if (std::abs(det) < 1e-14 * scale * scale)
        throw numeric_error("effective model: eigenvectors do not span the initial state");
    sol.c_plus = (alpha0 * vm[1] - vm[0] * beta0) / det;
    sol.c_minus = (vp[0] * beta0 - alpha0 * vp[1]) / det;
    return sol;
}

std::pair<cplx, cplx> heff_frame_amplitudes(const HeffSolution& sol, double s) {
    const cplx ep = std::exp(-kI * sol.eig.lambda_plus * s);
    const cplx em = std::exp(-kI * sol.eig.lambda_minus * s);
    const cplx alpha = sol.c_plus * sol.eig.state_plus[0] * ep +
                       sol.c_minus * sol.eig.state_minus[0] * em;
    const cplx beta = sol.c_plus * sol.eig.state_plus[1] * ep +
                      sol.c_minus * sol.eig.state_minus[1] * em;
    return {alpha, beta};
}

}  // namespace

AmplitudeTrajectory heff_trajectory(const TwoLevelSystem& sys, const PulseSpec& spec,
                                    double detuning, const EffectiveHamiltonian& h,
                                    InitialState init, const TimeGrid& grid) {
    if (!spec.order.is_flat_top())
        throw config_error("heff_trajectory: flat-top pulses only");
    (void)sys;
    const HeffSolution sol = solve_heff(spec, detuning, h, init);
    AmplitudeTrajectory traj;
    traj.grid = grid;
    traj.model = ModelTag::EffectiveHamiltonian;
    traj.a.resize(grid.n_points);
    traj.b.resize(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double t_cl =
            std::clamp(grid.time_at(i), spec.start_time(), spec.end_time());
        auto [alpha, beta] = heff_frame_amplitudes(sol, t_cl - spec.start_time());
        traj.a[i] = alpha;
        traj.b[i] = -beta * expi(-(detuning * t_cl + spec.cep_phi));
    }
    return traj;
}

Signal heff_momentum_time(const TwoLevelSystem& sys, const PulseSpec& spec, double detuning,
                          const EffectiveHamiltonian& h, InitialState init,
                          const TimeGrid& grid) {
    return momentum_expectation(heff_trajectory(sys, spec, detuning, h, init, grid), sys);
}

Spectrum heff_momentum_spectrum(const TwoLevelSystem& sys, const PulseSpec& spec,
                                double detuning, const EffectiveHamiltonian& h,
                                InitialState init, std::span<const double> omegas) {
    if (!spec.order.is_flat_top())
        throw config_error("heff_momentum_spectrum: flat-top pulses only");
    const HeffSolution sol = solve_heff(spec, detuning, h, init);
    const double tau = spec.duration_tau;
    const double t_i = spec.start_time();
    const double omega_line = sys.epsilon_ba() + detuning;

    // Four exponential components of alpha* beta: exponents
    // beta_jk = i (conj(lambda_j) - lambda_k), weights c_j* c_k v_j,alpha* v_k,beta.
    const cplx lambdas[2] = {sol.eig.lambda_plus, sol.eig.lambda_minus};
    const cplx v_alpha[2] = {sol.eig.state_plus[0], sol.eig.state_minus[0]};
    const cplx v_beta[2] = {sol.eig.state_plus[1], sol.eig.state_minus[1]};
    const cplx coeff[2] = {sol.c_plus, sol.c_minus};

    Spectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.assign(omegas.size(), cplx{0.0, 0.0});
    const cplx prefactor = -std::conj(sys.p_ba()) * expi(-spec.cep_phi) * tau /
                           std::sqrt(2.0 * kPi);
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const cplx exponent = kI * (std::conj(lambdas[j]) - lambdas[k]);
            const cplx weight = std::conj(coeff[j] * v_alpha[j]) * coeff[k] * v_beta[k] *
                                std::exp(-exponent * t_i);
            for (std::size_t i = 0; i < omegas.size(); ++i) {
                const cplx arg =
                    0.5 * tau * (omegas[i] - omega_line - kI * exponent);
                out.values[i] += prefactor * weight * sinc(arg);
            }
        }
    }
    return out;
}

std::pair<Signal, Signal> populations(const AmplitudeTrajectory& traj) {
    Signal pop_a{traj.grid, std::vector<double>(traj.grid.n_points)};
    Signal pop_b{traj.grid, std::vector<double>(traj.grid.n_points)};
    for (std::size_t i = 0; i < traj.grid.n_points; ++i) {
        pop_a.values[i] = std::norm(traj.a[i]);
        pop_b.values[i] = std::norm(traj.b[i]);
    }
    return {pop_a, pop_b};
}

Signal derivative(const Signal& signal) {
    const std::size_t n = signal.values.size();
    if (n < 5) throw config_error("derivative: need at least 5 samples");
    const auto& f = signal.values;
    Signal out{signal.grid, std::vector<double>(n)};
    const double inv = 1.0 / (12.0 * signal.grid.dt);
    out.values[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    out.values[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    for (std::size_t i = 2; i + 2 < n; ++i)
        out.values[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) * inv;
    out.values[n - 2] =
        (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * inv;
    out.values[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
                         16.0 * f[n - 4] + 3.0 * f[n - 5]) *
                        inv;
    return out;
}

Signal acceleration(const AmplitudeTrajectory& traj, const TwoLevelSystem& sys) {
    return derivative(momentum_expectation(traj, sys));
}

}  // namespace rabsorb
