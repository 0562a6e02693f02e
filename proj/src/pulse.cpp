#include "rabsorb/pulse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rabsorb/errors.hpp"
#include "rabsorb/transform.hpp"

namespace rabsorb {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// Adaptive Simpson on [a, b] with absolute tolerance eps.
template <typename F>
double simpson_step(F&& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double eps) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, eps, 48);
}

// Dimensionless envelope in u = 2t/tau.
double envelope_u(int n, double u) {
    return std::exp(-0.5 * kLn2 * std::pow(u * u, n));
}

// integral of exp(-(ln2/2) u^(2n)) du over the whole axis.
double envelope_integral_u(int n) {
    // Integrand below 1e-18 beyond this point.
    const double u_cut = std::pow(2.0 * std::log(1e18) / kLn2, 1.0 / (2.0 * n));
    const double half = adaptive_simpson([n](double u) { return envelope_u(n, u); }, 0.0,
                                         u_cut, 1e-12);
    return 2.0 * half;
}

// One positive lobe of |d(L_n^2)/dt| in u, up to constant factors:
// g(u) = u^(2n-1) exp(-ln2 u^(2n)).
double lobe_u(int n, double u) {
    return std::pow(u, 2 * n - 1) * std::exp(-kLn2 * std::pow(u, 2 * n));
}

double bisect_crossing(int n, double target, double lo, double hi, bool rising) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool above = lobe_u(n, mid) > target;
        if (above == rising)
            hi = mid;
        else
            lo = mid;
        if ((hi - lo) < 1e-10 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

EnvelopeOrder EnvelopeOrder::finite(int n) {
    if (n < 1) throw config_error("EnvelopeOrder: n must be >= 1");
    return EnvelopeOrder(n);
}

int EnvelopeOrder::n() const {
    if (n_ == 0) throw config_error("EnvelopeOrder: flat top has no finite index");
    return n_;
}

double PulseSpec::rabi_period(const TwoLevelSystem& sys) const {
    const double omega_r = peak_rabi(sys);
    if (omega_r == 0.0)
        throw config_error("PulseSpec: Rabi period undefined for zero amplitude");
    return 2.0 * kPi / std::abs(omega_r);
}

PulseSpec PulseSpec::from_intensity(double intensity_w_cm2, double omega0, double tau,
                                    EnvelopeOrder order, double cep) {
    if (omega0 <= 0.0) throw config_error("PulseSpec: carrier frequency must be positive");
    const double e0 = convert(intensity_w_cm2, Quantity::FieldAmplitude, Direction::ToAu);
    return {e0 / omega0, omega0, tau, order, cep};
}

double envelope(const PulseSpec& spec, double t) {
    if (spec.order.is_flat_top())
        return std::abs(t) <= 0.5 * spec.duration_tau ? 1.0 : 0.0;
    return envelope_u(spec.order.n(), 2.0 * t / spec.duration_tau);
}

double envelope_derivative(const PulseSpec& spec, double t) {
    if (spec.order.is_flat_top()) return 0.0;  // edge deltas dropped
    const int n = spec.order.n();
    const double u = 2.0 * t / spec.duration_tau;
    const double power = (u == 0.0) ? 0.0 : std::pow(u, 2 * n - 1);
    return -envelope_u(n, u) * (2.0 * n * kLn2 / spec.duration_tau) * power;
}

double vector_potential(const PulseSpec& spec, double t) {
    return spec.amplitude_a0 * envelope(spec, t) *
           std::sin(spec.carrier_omega0 * t + spec.cep_phi);
}

double electric_field(const PulseSpec& spec, double t) {
    const double phase = spec.carrier_omega0 * t + spec.cep_phi;
    return -spec.amplitude_a0 * (envelope_derivative(spec, t) * std::sin(phase) +
                                 spec.carrier_omega0 * envelope(spec, t) * std::cos(phase));
}

double area_constant(EnvelopeOrder order) {
    if (order.is_flat_top()) return 1.0;
    return 0.5 * envelope_integral_u(order.n());
}

double pulse_area(const PulseSpec& spec, const TwoLevelSystem& sys) {
    return spec.peak_rabi(sys) * spec.duration_tau * area_constant(spec.order);
}

double turn_on_duration(EnvelopeOrder order, double tau) {
    if (order.is_flat_top()) return 0.0;
    const int n = order.n();
    // Lobe maximum of u^(2n-1) exp(-ln2 u^(2n)) is at u* with
    // u*^(2n) = (2n-1) / (2n ln2).
    const double u_star = std::pow((2.0 * n - 1.0) / (2.0 * n * kLn2), 1.0 / (2.0 * n));
    const double half = 0.5 * lobe_u(n, u_star);
    double hi = u_star;
    while (lobe_u(n, hi) > half) hi *= 1.5;
    const double u_lo = bisect_crossing(n, half, 0.0, u_star, true);
    const double u_hi = bisect_crossing(n, half, u_star, hi, false);
    return 0.5 * tau * (u_hi - u_lo);
}

double bandwidth_constant(EnvelopeOrder order) {
    if (order.is_flat_top()) return std::numeric_limits<double>::infinity();
    return 0.5 / turn_on_duration(order, 1.0);
}

MollowConditionReport mollow_condition(const PulseSpec& spec, const TwoLevelSystem& sys) {
    const double t_rabi = spec.rabi_period(sys);
    MollowConditionReport report;
    report.area_constant = area_constant(spec.order);
    report.bandwidth_constant = bandwidth_constant(spec.order);
    report.ratio = spec.duration_tau / t_rabi;
    report.satisfied =
        report.area_constant < report.ratio && report.ratio < report.bandwidth_constant;
    report.margin_low = report.ratio - report.area_constant;
    report.margin_high = report.bandwidth_constant - report.ratio;
    return report;
}

Spectrum envelope_spectrum(const PulseSpec& spec, std::span<const double> omegas) {
    double omega_max = 1e-6;
    for (double w : omegas) {
        if (!std::isfinite(w)) throw config_error("envelope_spectrum: omega grid not finite");
        omega_max = std::max(omega_max, std::abs(w));
    }
    const double tau = spec.duration_tau;
    double t_max;
    if (spec.order.is_flat_top()) {
        t_max = 0.5 * tau;
    } else {
        // Envelope below 1e-8 beyond this point.
        const double u = std::pow(2.0 * std::log(1e8) / kLn2, 1.0 / (2.0 * spec.order.n()));
        t_max = 0.5 * u * tau;
    }
    const double dt_target = std::min(tau / 1000.0, 0.1 / omega_max);
    const double dt = t_max / std::ceil(t_max / dt_target);  // edges land on the grid
    TimeGrid grid = make_grid(2.0 * t_max, dt, 2.0 * dt, 0.0);
    Signal sampled{grid, {}};
    sampled.values.resize(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i)
        sampled.values[i] = envelope(spec, grid.time_at(i));
    return fourier(sampled, omegas);
}

Spectrum flat_top_potential_ft(const PulseSpec& spec, std::span<const double> omegas) {
    if (!spec.order.is_flat_top())
        throw config_error("flat_top_potential_ft: only defined for flat-top pulses");
    Spectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.resize(omegas.size());
    const double scale = spec.amplitude_a0 * 0.5 * spec.duration_tau / std::sqrt(2.0 * kPi);
    // Positive-frequency branch of A0 L sin(w0 t + phi); the CEP rotates the
    // line phase as exp(-i phi).
    const std::complex<double> phase{std::cos(spec.cep_phi), -std::sin(spec.cep_phi)};
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double x = (omegas[i] - spec.carrier_omega0) * 0.5 * spec.duration_tau;
        out.values[i] = std::complex<double>{0.0, scale * sinc(x)} * phase;
    }
    return out;
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

std::complex<double> sinc(std::complex<double> x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace rabsorb
