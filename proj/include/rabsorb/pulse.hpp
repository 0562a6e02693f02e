// Super-Gaussian / flat-top pulse shapes: envelopes, fields, pulse areas,
// turn-on durations, the dimensionless shape constants A_n and B_n, and the
// triplet admissibility condition A_n < tau/T_Rabi < B_n.
#ifndef RABSORB_PULSE_HPP
#define RABSORB_PULSE_HPP

#include <span>

#include "rabsorb/signal.hpp"
#include "rabsorb/two_level_system.hpp"
#include "rabsorb/units.hpp"

namespace rabsorb {

// Envelope order: finite super-Gaussian index n >= 1, or the flat-top limit.
class EnvelopeOrder {
public:
    static EnvelopeOrder finite(int n);
    static EnvelopeOrder flat_top() { return EnvelopeOrder(0); }

    bool is_flat_top() const { return n_ == 0; }
    int n() const;  // throws config_error when flat-top

    bool operator==(const EnvelopeOrder&) const = default;

private:
    explicit EnvelopeOrder(int n) : n_(n) {}
    int n_;  // 0 encodes flat-top
};

// Laser pulse in the vector-potential convention A(t) = A0 L_n(t) sin(w0 t + phi).
// tau is the FWHM of the squared envelope; L_n(+-tau/2)^2 = 1/2 for every
// finite n, and the flat top is 1 on |t| <= tau/2 (closed at the edges).
struct PulseSpec {
    double amplitude_a0;    // vector-potential amplitude (a.u.), >= 0
    double carrier_omega0;  // carrier angular frequency (a.u.), > 0
    double duration_tau;    // pulse duration (a.u.), > 0
    EnvelopeOrder order = EnvelopeOrder::flat_top();
    double cep_phi = 0.0;   // carrier-envelope phase (rad)

    double start_time() const { return -0.5 * duration_tau; }  // t_i
    double end_time() const { return 0.5 * duration_tau; }     // t_f

    // Peak field and peak Rabi frequency for a system with dipole z_ba.
    double peak_field() const { return amplitude_a0 * carrier_omega0; }
    double peak_rabi(const TwoLevelSystem& sys) const { return peak_field() * sys.z_ba; }
    double rabi_period(const TwoLevelSystem& sys) const;  // 2*pi/Omega0, error if A0 == 0

    // Builds a spec from intensity in W/cm^2: A0 = sqrt(I/I_au)/omega0.
    static PulseSpec from_intensity(double intensity_w_cm2, double omega0, double tau,
                                    EnvelopeOrder order, double cep = 0.0);
};

// Envelope value in [0, 1]; even in t.
double envelope(const PulseSpec& spec, double t);
// Analytic d(envelope)/dt; zero outside the support for the flat top (the edge
// deltas are dropped).
double envelope_derivative(const PulseSpec& spec, double t);
double vector_potential(const PulseSpec& spec, double t);
// E(t) = -dA/dt with the analytic envelope derivative.
double electric_field(const PulseSpec& spec, double t);

// Pulse area theta = Omega0 * integral(L_n) computed by adaptive quadrature
// (relative error <= 1e-8). Exact A0*w0*z*tau for the flat top.
double pulse_area(const PulseSpec& spec, const TwoLevelSystem& sys);

// A_n = integral(L_n dt) / tau. Decreases toward 1 with n; exactly 1 flat-top.
double area_constant(EnvelopeOrder order);

// Turn-on/off duration tau'_n: FWHM of one lobe of |d(L_n^2)/dt|, located by
// bracketing the lobe maximum and bisecting the half-height crossings. Zero
// for the flat top.
double turn_on_duration(EnvelopeOrder order, double tau);

// B_n = tau / (2 tau'_n); +infinity for the flat top.
double bandwidth_constant(EnvelopeOrder order);

struct MollowConditionReport {
    double area_constant;       // A_n
    double bandwidth_constant;  // B_n (+inf for flat top)
    double ratio;               // tau / T_Rabi
    bool satisfied;             // A_n < ratio < B_n, strict
    double margin_low;          // ratio - A_n
    double margin_high;         // B_n - ratio (+inf for flat top)
};

// Evaluates the admissibility condition. Throws config_error when A0 == 0
// (the Rabi period is undefined).
MollowConditionReport mollow_condition(const PulseSpec& spec, const TwoLevelSystem& sys);

// Numeric Fourier transform of the envelope under the repo-wide convention
// (see transform.hpp); |L(-w)| = |L(w)|.
Spectrum envelope_spectrum(const PulseSpec& spec, std::span<const double> omegas);

// Closed-form positive-frequency transform of the flat-top potential:
// A(w) = (i A0 / sqrt(2 pi)) (tau/2) sinc((w - w0) tau/2).
// Throws config_error for finite-order envelopes.
Spectrum flat_top_potential_ft(const PulseSpec& spec, std::span<const double> omegas);

// sin(x)/x with the removable singularity filled in; also for complex x.
double sinc(double x);
std::complex<double> sinc(std::complex<double> x);

}  // namespace rabsorb

#endif
