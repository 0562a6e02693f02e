// Radiated-light observables: filtered resonance fluorescence (semiclassical
// and quantum parts), classical Larmor radiation and the fluorescence scaling.
#ifndef RABSORB_EMISSION_HPP
#define RABSORB_EMISSION_HPP

#include <span>
#include <vector>

#include "rabsorb/dynamics.hpp"
#include "rabsorb/signal.hpp"

namespace rabsorb {

struct FluorescenceSpectrum {
    std::vector<double> omegas;
    std::vector<double> s_semiclassical;  // coherent part, >= 0
    std::vector<double> s_quantum;        // incoherent part, >= 0
    std::vector<double> total;            // scale_factor * (S_s + S_q)
    double gamma_filter = 0.0;
    double scale_factor = 1.0;  // arbitrary units until scaled to Larmor
};

// Filtered-spectrometer fluorescence, evaluated by direct quadrature over the
// trajectory window with the literal exp(+Gamma_F t) weight (t on the
// simulation grid, centred at the pulse):
//   S_s = 2 G_F |int dt exp([G_F - i(w - w0)] t) a(t) b*(t)|^2
//   S_q = 2 G_F |int dt exp([G_F - i(w - w0)] t) |b(t)|^2|^2
// The quantum part squares a single time integral as a deliberate convention;
// for large Gamma_F * t the growing weight makes it diverge, so keep the
// filter small. Throws config_error when gamma_filter <= 0.
FluorescenceSpectrum fluorescence(const AmplitudeTrajectory& traj, double gamma_filter,
                                  double omega0, std::span<const double> omegas);

struct LarmorSpectrum {
    std::vector<double> omegas;
    std::vector<double> w_total;  // angle-integrated, >= 0
};

// Angle-integrated Larmor radiation W(w) = (4 / 3 c^3) |a(w)|^2 where a(t) is
// the acceleration expectation value.
LarmorSpectrum larmor(const Signal& accel, std::span<const double> omegas);

// Angle-resolved value at polar angle theta: sin^2(theta) |a(w)|^2 / (2 pi c^3);
// equals (3/(8 pi)) sin^2(theta) * w_total.
std::vector<double> larmor_at_angle(const LarmorSpectrum& spectrum, double theta_angle);

// Least-squares scale between the semiclassical part and the Larmor spectrum
// applied to the total. Throws config_error when S_s vanishes identically.
FluorescenceSpectrum scale_fluorescence_to_larmor(FluorescenceSpectrum fluor,
                                                  const LarmorSpectrum& larmor_spectrum);

}  // namespace rabsorb

#endif
