// Two-level dynamics: explicit two-step (leapfrog) propagation of the state
// amplitudes, the closed-form flat-top (RWA) solution, the non-Hermitian
// effective-Hamiltonian model, and expectation values built from amplitudes.
//
// Amplitudes a(t), b(t) are interaction-picture coefficients of
// |Psi> = a|a> exp(-i eps_a t) + b|b> exp(-i eps_b t).
#ifndef RABSORB_DYNAMICS_HPP
#define RABSORB_DYNAMICS_HPP

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <utility>

#include "rabsorb/pulse.hpp"
#include "rabsorb/signal.hpp"
#include "rabsorb/two_level_system.hpp"

namespace rabsorb {

using cplx = std::complex<double>;

enum class ModelTag { Numeric, AnalyticFlatTop, EffectiveHamiltonian };

struct InitialState {
    cplx a0{1.0, 0.0};
    cplx b0{0.0, 0.0};
};

struct AmplitudeTrajectory {
    TimeGrid grid;
    std::vector<cplx> a;
    std::vector<cplx> b;
    ModelTag model = ModelTag::Numeric;
};

// Two-step recursion on the bare coefficients expressed in interaction-picture
// amplitudes, coupling E(t) z_ba, no rotating-wave approximation. Bootstrapped
// by one classical 4th-order step. Throws numeric_error when the norm drifts
// by more than 1e-4 over the run (advice: reduce dt).
AmplitudeTrajectory propagate_numeric(const TwoLevelSystem& sys, const PulseSpec& spec,
                                      const TimeGrid& grid, InitialState init = {});

// Closed-form Rabi amplitudes for a flat-top pulse in the rotating-wave
// approximation, evaluated at elapsed time t - t_i. Equals the RWA limit of
// propagate_numeric for the A ~ sin(w0 t + phi) field convention; the phase
// origin of the textbook form differs from that convention by pi/2 plus the
// detuning phase accumulated up to t_i (handled internally). Outside the pulse
// support the amplitudes are frozen (free evolution in this picture).
std::pair<cplx, cplx> analytic_flat_top_amplitudes(const TwoLevelSystem& sys,
                                                   const PulseSpec& spec, double detuning,
                                                   InitialState init, double t);

// Same solution sampled on a grid.
AmplitudeTrajectory analytic_flat_top_trajectory(const TwoLevelSystem& sys,
                                                 const PulseSpec& spec, double detuning,
                                                 InitialState init, const TimeGrid& grid);

// Textbook Rabi oscillation amplitudes as a free-standing kernel:
//   a(s) = e^{+i dw s/2} [a0 cos(Ws/2) - i((dw a0 + i W_R b0 e^{+i phi})/W) sin(Ws/2)]
//   b(s) = e^{-i dw s/2} [b0 cos(Ws/2) + i((dw b0 + i W_R a0 e^{-i phi})/W) sin(Ws/2)]
// with W = sqrt(W_R^2 + dw^2) and s the elapsed time.
std::pair<cplx, cplx> rabi_amplitudes(double rabi_omega, double detuning, double phi,
                                      InitialState init, double elapsed);

// Coefficients of the {1, cos(Ws), sin(Ws)} expansion of the coherence in the
// same textbook parameterisation:
//   A+- = 1/2 [a0* b0 +- (dw^2 a0* b0 - dw W_R |a0|^2 e^{-i phi}
//              + dw W_R |b0|^2 e^{-i phi} - W_R^2 a0* b0 e^{-2 i phi}) / W^2]
//   B   = (2 dw a0* b0 - W_R |a0|^2 e^{-i phi} + W_R |b0|^2 e^{-i phi}) / (2W)
struct MomentumCoefficients {
    cplx a_plus;
    cplx a_minus;
    cplx b;
};
MomentumCoefficients momentum_coefficients(double rabi_omega, double detuning, double phi,
                                           InitialState init);

// p_z(t) = a*(t) b(t) p_ba* exp(-i eps_ba t) + c.c.; real by construction.
Signal momentum_expectation(const AmplitudeTrajectory& traj, const TwoLevelSystem& sys);

// Closed-form momentum expectation value during a flat-top pulse; equals
// momentum_expectation of the analytic trajectory. Zero outside the support.
double analytic_momentum_time(const TwoLevelSystem& sys, const PulseSpec& spec,
                              double detuning, InitialState init, double t);

// Closed-form positive-frequency momentum spectrum of the flat-top solution:
// three sinc lines at w0 and w0 -+ W carrying the expansion coefficients and
// the window phases exp(-+ i W t_i).
Spectrum analytic_momentum_spectrum(const TwoLevelSystem& sys, const PulseSpec& spec,
                                    double detuning, InitialState init,
                                    std::span<const double> omegas);

// Effective non-Hermitian two-level Hamiltonian in the rotating frame,
// h_ab = h_ba (complex symmetric).
struct EffectiveHamiltonian {
    cplx h_aa;
    cplx h_bb;
    cplx h_ab;
};

// Complex level shifts beyond the bare RWA model; the scaling parameters live
// in external work, so all default to zero and are user overridable.
struct EffectiveShifts {
    double gamma_a = 0.0;  // decay rate of |a|, Im(h_aa) = -gamma_a/2
    double gamma_b = 0.0;  // decay rate of |b|, Im(h_bb) = -gamma_b/2
    cplx delta_r{0.0, 0.0};  // coupling correction added to Omega/2
    cplx shift_a{0.0, 0.0};  // real level shift added to h_aa
    cplx shift_b{0.0, 0.0};  // real level shift added to h_bb
};

// Default rotating-frame parameterisation
//   h_aa = -i gamma_a / 2 + shift_a
//   h_bb = -dw - i gamma_b / 2 + shift_b
//   h_ab = Omega/2 + delta_r
// which reduces to the Hermitian RWA Hamiltonian when everything is zero.
// Throws config_error when any resulting diagonal has positive imaginary part.
EffectiveHamiltonian build_effective_hamiltonian(const TwoLevelSystem& sys,
                                                 const PulseSpec& spec, double detuning,
                                                 const EffectiveShifts& shifts = {});

struct EffectiveEigensystem {
    cplx lambda_plus;
    cplx lambda_minus;
    std::array<cplx, 2> state_plus;   // unnormalised (h_ab, (h_bb-h_aa)/2 + W/2)
    std::array<cplx, 2> state_minus;  // unnormalised (h_ab, (h_bb-h_aa)/2 - W/2)
    cplx w;                           // complex generalised Rabi frequency
};

// lambda_+- = (h_aa+h_bb)/2 +- W/2 with W = sqrt((h_aa-h_bb)^2 + 4 h_ab^2).
// Throws numeric_error when W vanishes (expansion undefined).
EffectiveEigensystem heff_eigensystem(const EffectiveHamiltonian& h);

// Rotating-frame trajectory under the effective Hamiltonian during the pulse
// window, mapped back to interaction-picture amplitudes. Frozen outside.
AmplitudeTrajectory heff_trajectory(const TwoLevelSystem& sys, const PulseSpec& spec,
                                    double detuning, const EffectiveHamiltonian& h,
                                    InitialState init, const TimeGrid& grid);

// Momentum expectation value of the effective model: four exponential terms
// in time, four complex-argument sinc lines in frequency. Both reduce to the
// Hermitian flat-top results when all imaginary parts and delta_r vanish.
Signal heff_momentum_time(const TwoLevelSystem& sys, const PulseSpec& spec,
                          double detuning, const EffectiveHamiltonian& h,
                          InitialState init, const TimeGrid& grid);
Spectrum heff_momentum_spectrum(const TwoLevelSystem& sys, const PulseSpec& spec,
                                double detuning, const EffectiveHamiltonian& h,
                                InitialState init, std::span<const double> omegas);

// |a(t)|^2 and |b(t)|^2.
std::pair<Signal, Signal> populations(const AmplitudeTrajectory& traj);

// Numerical time derivative of momentum_expectation: 4th-order centred
// stencil, one-sided at the ends. Needs at least 5 samples.
Signal acceleration(const AmplitudeTrajectory& traj, const TwoLevelSystem& sys);

// 4th-order derivative of a sampled signal (helper, exposed for tests).
Signal derivative(const Signal& signal);

}  // namespace rabsorb

#endif
