#include "rabsorb/emission.hpp"

#include <cmath>
#include <numbers>

#include "rabsorb/errors.hpp"
#include "rabsorb/units.hpp"

namespace rabsorb {

namespace {

// Trapezoid quadrature of exp([gamma - i(w - w0)] t) f(t) over the trajectory
// window, one omega at a time. The growing exp(gamma t) weight is evaluated
// literally; gamma stays small (a few percent of the Rabi frequency), so the
// factor remains tame over the simulation window.
std::vector<cplx> filtered_integral(const TimeGrid& grid, const std::vector<cplx>& f,
                                    double gamma, double omega0,
                                    std::span<const double> omegas) {
    std::vector<cplx> weighted(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        weighted[j] = f[j] * std::exp(gamma * grid.time_at(j));
    std::vector<cplx> out(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double delta = omegas[i] - omega0;
        const cplx step{std::cos(delta * grid.dt), -std::sin(delta * grid.dt)};
        cplx acc{0.0, 0.0};
        cplx phase{std::cos(delta * grid.t_start), -std::sin(delta * grid.t_start)};
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (j % 512 == 0) {
                const double t = grid.time_at(j);
                phase = {std::cos(delta * t), -std::sin(delta * t)};
            }
            const double w = (j == 0 || j + 1 == f.size()) ? 0.5 : 1.0;
            acc += w * phase * weighted[j];
            phase *= step;
        }
        out[i] = acc * grid.dt;
    }
    return out;
}

}  // namespace

FluorescenceSpectrum fluorescence(const AmplitudeTrajectory& traj, double gamma_filter,
                                  double omega0, std::span<const double> omegas) {
    if (gamma_filter <= 0.0) throw config_error("fluorescence: gamma_filter must be positive");
    const std::size_t n = traj.grid.n_points;
    std::vector<cplx> coherence(n), excited(n);
    for (std::size_t j = 0; j < n; ++j) {
        coherence[j] = traj.a[j] * std::conj(traj.b[j]);
        excited[j] = {std::norm(traj.b[j]), 0.0};
    }
    const auto semi = filtered_integral(traj.grid, coherence, gamma_filter, omega0, omegas);
    const auto quant = filtered_integral(traj.grid, excited, gamma_filter, omega0, omegas);

    FluorescenceSpectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.gamma_filter = gamma_filter;
    out.s_semiclassical.resize(omegas.size());
    out.s_quantum.resize(omegas.size());
    out.total.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        out.s_semiclassical[i] = 2.0 * gamma_filter * std::norm(semi[i]);
        out.s_quantum[i] = 2.0 * gamma_filter * std::norm(quant[i]);
        out.total[i] = out.s_semiclassical[i] + out.s_quantum[i];
    }
    return out;
}

LarmorSpectrum larmor(const Signal& accel, std::span<const double> omegas) {
    const Spectrum accel_ft = fourier(accel, omegas);
    LarmorSpectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.w_total.resize(omegas.size());
    const double c3 = std::pow(units.speed_of_light_au, 3);
    for (std::size_t i = 0; i < omegas.size(); ++i)
        out.w_total[i] = 4.0 / (3.0 * c3) * std::norm(accel_ft.values[i]);
    return out;
}

std::vector<double> larmor_at_angle(const LarmorSpectrum& spectrum, double theta_angle) {
    // sin^2(theta)/(2 pi c^3) |a|^2 = (3 / 8 pi) sin^2(theta) * w_total
    const double factor =
        3.0 / (8.0 * std::numbers::pi) * std::sin(theta_angle) * std::sin(theta_angle);
    std::vector<double> out(spectrum.w_total.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = factor * spectrum.w_total[i];
    return out;
}

FluorescenceSpectrum scale_fluorescence_to_larmor(FluorescenceSpectrum fluor,
                                                  const LarmorSpectrum& larmor_spectrum) {
    if (fluor.omegas.size() != larmor_spectrum.omegas.size())
        throw config_error("scale_fluorescence_to_larmor: grids differ");
    double ss = 0.0, sw = 0.0;
    for (std::size_t i = 0; i < fluor.omegas.size(); ++i) {
        ss += fluor.s_semiclassical[i] * fluor.s_semiclassical[i];
        sw += fluor.s_semiclassical[i] * larmor_spectrum.w_total[i];
    }
    if (ss == 0.0)
        throw config_error("scale_fluorescence_to_larmor: semiclassical part vanishes");
    fluor.scale_factor = sw / ss;
    for (std::size_t i = 0; i < fluor.total.size(); ++i)
        fluor.total[i] =
            fluor.scale_factor * (fluor.s_semiclassical[i] + fluor.s_quantum[i]);
    return fluor;
}

}  // namespace rabsorb
