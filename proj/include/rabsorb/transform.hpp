// Discrete approximation of the continuous Fourier transform shared by all
// spectral operations, plus the envelope filter rule.
//
// Convention (fixed so the flat-top potential reproduces its closed form
// including the factor +i):
//   f(w) = (2*pi)^(-1/2) * dt * sum_j w_j f(t_j) exp(+i w t_j)
// with trapezoid end weights w_j.
#ifndef RABSORB_TRANSFORM_HPP
#define RABSORB_TRANSFORM_HPP

#include <span>

#include "rabsorb/pulse.hpp"
#include "rabsorb/signal.hpp"

namespace rabsorb {

// Evaluates the transform on an arbitrary (not necessarily uniform) omega
// grid. Sets boundary_warning when |f| at either grid end exceeds 1e-6 of
// max|f|. Parallelises over omega points.
Spectrum fourier(const Signal& signal, std::span<const double> omegas);
Spectrum fourier(const ComplexSignal& signal, std::span<const double> omegas);

// Pointwise product with the pulse envelope L_n(t).
Signal apply_filter(const Signal& signal, const PulseSpec& spec);
ComplexSignal apply_filter(const ComplexSignal& signal, const PulseSpec& spec);

// Worker count used by parallel loops: RABI_ABSORB_THREADS if set, else the
// hardware concurrency.
unsigned worker_count();

}  // namespace rabsorb

#endif
