// Carriers for sampled time-domain signals and frequency-domain spectra.
#ifndef RABSORB_SIGNAL_HPP
#define RABSORB_SIGNAL_HPP

#include <complex>
#include <vector>

#include "rabsorb/units.hpp"

namespace rabsorb {

// Real signal on a uniform time grid (fields, momentum, populations, energy).
struct Signal {
    TimeGrid grid;
    std::vector<double> values;
};

// Complex signal on a uniform time grid (coherences a*b etc.).
struct ComplexSignal {
    TimeGrid grid;
    std::vector<std::complex<double>> values;
};

// Sampled spectrum on a strictly increasing angular-frequency grid.
// boundary_warning is set by the transform when the input signal had not
// decayed at the grid ends (and no filter zeroed it).
struct Spectrum {
    std::vector<double> omegas;
    std::vector<std::complex<double>> values;
    bool boundary_warning = false;
};

// Convenience: n uniformly spaced angular frequencies on [lo, hi].
std::vector<double> uniform_omega_grid(double lo, double hi, std::size_t n);

}  // namespace rabsorb

#endif
