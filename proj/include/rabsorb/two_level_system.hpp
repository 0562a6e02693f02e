// Two-level atom: essential-state energies and the dipole matrix element.
#ifndef RABSORB_TWO_LEVEL_SYSTEM_HPP
#define RABSORB_TWO_LEVEL_SYSTEM_HPP

#include <complex>

namespace rabsorb {

struct TwoLevelSystem {
    double epsilon_a;  // lower state energy (a.u.)
    double epsilon_b;  // upper state energy (a.u.)
    double z_ba;       // transition dipole element <b|z|a>, real

    double epsilon_ba() const { return epsilon_b - epsilon_a; }

    // Momentum matrix element p_ba = i * eps_ba * z_ba.
    std::complex<double> p_ba() const { return {0.0, epsilon_ba() * z_ba}; }

    // Places the two levels symmetrically about zero. Only the gap enters the
    // physics; centred energies keep the bare phases slow for the propagator.
    static TwoLevelSystem from_gap(double eps_ba, double z_ba);

    // 1s-2p hydrogen defaults: 10.2 eV gap, z0 = 0.745.
    static TwoLevelSystem hydrogen_1s2p();
};

}  // namespace rabsorb

#endif
